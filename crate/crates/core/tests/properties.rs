mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use fosep::automata::{
    nfa_from_regex, pair_to_morphism, syntactic_semigroup, transition_semigroup, words_up_to, Nfa,
};
use fosep::gen;
use fosep::logic::{
    ef_classes, ef_equivalent, eval, parse_formula, simplify, Canonicalizer, FoFormula, Formula, Var,
};
use fosep::saturation::{is_fo_separable, saturate_semigroup, SaturationConfig, Variant};
use fosep::subsets::{set_omega_pair, set_product, ElementSet, SubsetFamily};
use fosep::synthesis::{build_partition, synthesize_separator, verify_separator};
use fosep::FiniteSemigroup;

fn small_semigroup(seed: u64) -> FiniteSemigroup {
    let size = 1 + (seed % 8) as usize;
    gen::random_semigroup(seed, size, 4, 2).unwrap()
}

fn set_of(n: usize, mask: u32) -> ElementSet {
    ElementSet::from_elements(n, bits(mask & ((1 << n) - 1)))
}

// ---------------------------------------------------------------- semigroups

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idempotent_power_is_the_only_idempotent_power(seed in any::<u64>()) {
        let s = small_semigroup(seed);
        for x in s.elements() {
            let e = s.idempotent_power(x).idempotent;
            prop_assert_eq!(s.mul(e, e), e);
            let mut p = x;
            let mut powers = BTreeSet::new();
            while powers.insert(p) {
                p = s.mul(p, x);
            }
            let idempotents: Vec<_> = powers.into_iter().filter(|&y| s.mul(y, y) == y).collect();
            prop_assert_eq!(idempotents, vec![e]);
        }
    }

    #[test]
    fn aperiodic_iff_trivial_subgroups(seed in any::<u64>()) {
        let s = small_semigroup(seed);
        let trivial = s.maximal_subgroups().iter().all(|g| g.len() == 1);
        // independent check: x^ω = x^(ω+1) for every x
        let direct = s.elements().all(|x| {
            let (w, w1) = s.omega_pair(x);
            let mut p = x;
            let mut seen = BTreeSet::new();
            while seen.insert(p) { p = s.mul(p, x); }
            let e = seen.iter().copied().find(|&y| s.mul(y, y) == y).unwrap();
            e == w && w1 == s.mul(e, x) && w == w1
        });
        prop_assert_eq!(s.is_aperiodic(), trivial);
        prop_assert_eq!(s.is_aperiodic(), direct);
    }

    #[test]
    fn h_classes_partition_the_semigroup(seed in any::<u64>()) {
        let s = small_semigroup(seed);
        let h = s.h_classes();
        let mut seen = vec![0; s.size()];
        for class in &h.classes {
            for &x in class {
                seen[x as usize] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn products_are_associative(seed in any::<u64>(), other in any::<u64>()) {
        let p = small_semigroup(seed).product(&small_semigroup(other));
        prop_assert!(p.size() <= 64);
        prop_assert!(p.check_associativity().is_ok());
        prop_assert!(p.opposite().check_associativity().is_ok());
    }
}

// ------------------------------------------------------------------ subsets

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn union_of_products_is_product_of_unions(
        seed in any::<u64>(),
        f in prop::collection::vec(1u32..32, 1..4),
        g in prop::collection::vec(1u32..32, 1..4),
    ) {
        let s = gen::random_semigroup(seed, 1 + (seed % 5) as usize, 3, 2).unwrap();
        let n = s.size();
        let union = |xs: &[u32]| xs.iter().fold(0, |m, &x| m | (x & ((1 << n) - 1)));
        let mut lhs = 0;
        for &a in &f {
            for &b in &g {
                lhs |= mask_product(&s, a & ((1 << n) - 1), b & ((1 << n) - 1));
            }
        }
        prop_assert_eq!(lhs, mask_product(&s, union(&f), union(&g)));
        let lib = set_product(&s, &set_of(n, union(&f)), &set_of(n, union(&g)));
        prop_assert_eq!(mask_of(&lib), lhs);
    }

    #[test]
    fn family_insertion_is_order_insensitive(sets in prop::collection::vec(0u32..16, 0..10)) {
        let mut forward = SubsetFamily::new(4);
        for &m in &sets {
            forward.insert(set_of(4, m));
        }
        let mut backward = SubsetFamily::new(4);
        for &m in sets.iter().rev() {
            backward.insert(set_of(4, m));
            backward.insert(set_of(4, m));
        }
        prop_assert_eq!(forward.maximal_sets(), backward.maximal_sets());
        // membership against the explicit downset
        for q in 0u32..16 {
            let naive = q == 0 || sets.iter().any(|&m| m & q == q);
            prop_assert_eq!(forward.contains(&set_of(4, q)), naive);
        }
        // the stored sets form an antichain
        let max = forward.maximal_sets();
        for a in max {
            for b in max {
                prop_assert!(a == b || !a.is_subset(b));
            }
        }
    }

    #[test]
    fn omega_power_of_a_set_is_idempotent(seed in any::<u64>(), mask in 1u32..256) {
        let s = small_semigroup(seed);
        let t = set_of(s.size(), mask);
        prop_assume!(!t.is_empty());
        let (e, e1) = set_omega_pair(&s, &t);
        prop_assert_eq!(set_product(&s, &e, &e), e.clone());
        prop_assert_eq!(set_product(&s, &e, &t), e1);
    }
}

// --------------------------------------------------------------- saturation

fn sub_semigroup(s: &FiniteSemigroup, gens: &[u32]) -> (FiniteSemigroup, Vec<u32>) {
    let elems = s.generated_by(gens);
    let index = |x: u32| elems.iter().position(|&y| y == x).unwrap() as u32;
    let sub = FiniteSemigroup::from_fn(elems.len(), |a, b| index(s.mul(elems[a as usize], elems[b as usize])))
        .unwrap();
    (sub, elems)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn saturation_matches_powerset_oracle(seed in any::<u64>()) {
        let s = small_semigroup(seed);
        let r = saturate_semigroup(&s, Variant::Omega, &SaturationConfig::default()).unwrap();
        prop_assert_eq!(masks_of(&r.family), maximal(&brute_sat(&s)));
    }

    #[test]
    fn saturation_is_monotone_in_the_semigroup(seed in any::<u64>(), g in 0u32..8) {
        let s = small_semigroup(seed);
        let (sub, elems) = sub_semigroup(&s, &[g % s.size() as u32]);
        let cfg = SaturationConfig::default();
        let small = saturate_semigroup(&sub, Variant::Omega, &cfg).unwrap();
        let big = saturate_semigroup(&s, Variant::Omega, &cfg).unwrap();
        for t in small.family.maximal_sets() {
            let lifted = ElementSet::from_elements(s.size(), t.iter().map(|x| elems[x as usize]));
            prop_assert!(big.family.contains(&lifted));
        }
    }

    #[test]
    fn variants_agree(seed in any::<u64>()) {
        let s = small_semigroup(seed);
        let cfg = SaturationConfig::default();
        let o = saturate_semigroup(&s, Variant::Omega, &cfg).unwrap();
        let g = saturate_semigroup(&s, Variant::Group, &cfg).unwrap();
        let h = saturate_semigroup(&s, Variant::Hclass, &cfg).unwrap();
        prop_assert_eq!(o.family.maximal_sets(), g.family.maximal_sets());
        prop_assert_eq!(o.family.maximal_sets(), h.family.maximal_sets());
    }
}

// ---------------------------------------------------------------- automata

#[derive(Clone, Debug)]
enum Re {
    Letter(char),
    Alt(Box<Re>, Box<Re>),
    Cat(Box<Re>, Box<Re>),
    Star(Box<Re>),
    Plus(Box<Re>),
}

impl Re {
    fn text(&self) -> String {
        match self {
            Re::Letter(c) => c.to_string(),
            Re::Alt(a, b) => format!("({}|{})", a.text(), b.text()),
            Re::Cat(a, b) => format!("{}{}", a.text(), b.text()),
            Re::Star(a) => format!("({})*", a.text()),
            Re::Plus(a) => format!("({})+", a.text()),
        }
    }

    /// End positions of matches of `self` starting at `i`.
    fn ends(&self, w: &[char], i: usize) -> BTreeSet<usize> {
        match self {
            Re::Letter(c) => (i < w.len() && w[i] == *c).then_some(i + 1).into_iter().collect(),
            Re::Alt(a, b) => a.ends(w, i).union(&b.ends(w, i)).copied().collect(),
            Re::Cat(a, b) => a.ends(w, i).into_iter().flat_map(|j| b.ends(w, j)).collect(),
            Re::Star(a) | Re::Plus(a) => {
                let mut out: BTreeSet<usize> = if matches!(self, Re::Star(_)) { [i].into() } else { BTreeSet::new() };
                let mut frontier: Vec<usize> = a.ends(w, i).into_iter().collect();
                while let Some(j) = frontier.pop() {
                    if out.insert(j) {
                        frontier.extend(a.ends(w, j));
                    }
                }
                out
            }
        }
    }

    fn matches(&self, w: &str) -> bool {
        let w: Vec<char> = w.chars().collect();
        self.ends(&w, 0).contains(&w.len())
    }
}

fn regex_strategy() -> impl Strategy<Value = Re> {
    let leaf = prop_oneof![Just(Re::Letter('a')), Just(Re::Letter('b'))];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Re::Alt(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Re::Cat(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Re::Star(Box::new(a))),
            inner.prop_map(|a| Re::Plus(Box::new(a))),
        ]
    })
}

fn random_nfa(seed: u64) -> Nfa {
    gen::random_nfa(seed, 1 + (seed % 4) as usize, &['a', 'b'], 0.35)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regex_automaton_agrees_with_direct_matching(r in regex_strategy()) {
        let n = ab_nfa(&r.text());
        for w in words_up_to(&['a', 'b'], 8) {
            prop_assert_eq!(n.accepts(&w), r.matches(&w), "{} on {}", r.text(), w);
        }
    }

    #[test]
    fn transition_semigroup_preserves_the_language(seed in any::<u64>()) {
        let n = random_nfa(seed);
        let (ts, accepting) = transition_semigroup(&n).unwrap();
        for w in words_up_to(&['a', 'b'], 8) {
            let x = ts.morphism.image_str(&w).unwrap();
            prop_assert_eq!(n.accepts(&w), accepting.contains(x), "{}", w);
            // the relation of w, by simulation
            let json = n.to_json();
            let rel = action(&n, &w);
            let sim = json.initial.iter().any(|&p| json.accepting.iter().any(|&q| rel.contains(&(p, q))));
            prop_assert_eq!(sim, n.accepts(&w));
        }
    }

    #[test]
    fn syntactic_is_not_larger_than_transition(seed in any::<u64>()) {
        let n = random_nfa(seed);
        let (ts, _) = transition_semigroup(&n).unwrap();
        let (syn, acc) = syntactic_semigroup(&n).unwrap();
        prop_assert!(syn.semigroup().size() <= ts.morphism.semigroup().size());
        for w in words_up_to(&['a', 'b'], 6) {
            prop_assert_eq!(n.accepts(&w), acc.contains(syn.image_str(&w).unwrap()));
        }
    }
}

// -------------------------------------------------------------------- logic

fn formula_strategy() -> impl Strategy<Value = FoFormula> {
    let var = 1u32..4;
    let leaf = prop_oneof![
        (prop_oneof![Just('a'), Just('b')], var.clone()).prop_map(|(c, x)| Formula::letter(c, x)),
        (var.clone(), var.clone()).prop_map(|(x, y)| Formula::less(x, y)),
        (var.clone(), var.clone()).prop_map(|(x, y)| Formula::equal(x, y)),
        Just(Formula::tt()),
        Just(Formula::ff()),
    ];
    leaf.prop_recursive(5, 24, 3, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::and),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::or),
            (1u32..4, inner.clone()).prop_map(|(x, f)| Formula::exists(x, f)),
            (1u32..4, inner).prop_map(|(x, f)| Formula::forall(x, f)),
        ]
    })
    .prop_map(|f| {
        // close the formula
        let free: Vec<Var> = f.free_vars();
        free.into_iter().fold(f, |g, x| Formula::exists(x, g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rewriting_preserves_truth(f in formula_strategy()) {
        let s = simplify(&f);
        let c = Canonicalizer::new(1).canonicalize(&f);
        let printed = parse_formula(&f.to_string()).unwrap();
        prop_assert!(c.rank() <= f.rank());
        for w in words_up_to(&['a', 'b'], 4) {
            let v = eval(&f, &w).unwrap();
            prop_assert_eq!(eval(&s, &w).unwrap(), v, "simplify: {} on {}", f, w);
            prop_assert_eq!(eval(&c, &w).unwrap(), v, "canonical: {} on {}", f, w);
            prop_assert_eq!(eval(&printed, &w).unwrap(), v, "printed: {} on {}", f, w);
        }
    }

    #[test]
    fn eval_respects_connectives(f in formula_strategy(), g in formula_strategy()) {
        for w in words_up_to(&['a', 'b'], 3) {
            let (x, y) = (eval(&f, &w).unwrap(), eval(&g, &w).unwrap());
            prop_assert_eq!(eval(&Formula::not(f.clone()), &w).unwrap(), !x);
            prop_assert_eq!(eval(&Formula::and2(f.clone(), g.clone()), &w).unwrap(), x && y);
            prop_assert_eq!(eval(&Formula::or2(f.clone(), g.clone()), &w).unwrap(), x || y);
        }
    }

    #[test]
    fn sentences_of_rank_k_respect_rank_k_equivalence(f in formula_strategy(), u in "[ab]{1,5}", v in "[ab]{1,5}") {
        if ef_equivalent(&u, &v, f.rank()) {
            prop_assert_eq!(eval(&f, &u).unwrap(), eval(&f, &v).unwrap(), "{}", f);
        }
    }

    #[test]
    fn rank_equivalence_is_a_congruence(u in "[ab]{1,4}", v in "[ab]{1,4}", u2 in "[ab]{1,3}", v2 in "[ab]{1,3}", k in 0usize..3) {
        if ef_equivalent(&u, &v, k) && ef_equivalent(&u2, &v2, k) {
            let (uu, vv) = (format!("{}{}", u, u2), format!("{}{}", v, v2));
            prop_assert!(ef_equivalent(&uu, &vv, k));
        }
    }
}

#[test]
fn higher_rank_refines_lower_rank() {
    let tables: Vec<_> = (0..=3).map(|k| ef_classes(&['a', 'b'], 6, k).unwrap()).collect();
    let words: Vec<String> = words_up_to(&['a', 'b'], 6).collect();
    for k in 0..3 {
        for u in &words {
            for v in &words {
                let fine = tables[k + 1].class_of_word(u) == tables[k + 1].class_of_word(v);
                let coarse = tables[k].class_of_word(u) == tables[k].class_of_word(v);
                assert!(!fine || coarse, "{u} {v} {k}");
            }
        }
    }
}

// ---------------------------------------------------------------- synthesis

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn partitions_cover_each_word_once(seed in any::<u64>()) {
        let m = gen::random_morphism(seed, &['a', 'b'], 3, 4).unwrap();
        let p = build_partition(&m).unwrap();
        let sat = saturate_semigroup(m.semigroup(), Variant::Omega, &SaturationConfig::default()).unwrap();
        for b in &p.blocks {
            prop_assert!(sat.family.contains(&b.image_union));
        }
        for w in words_up_to(&['a', 'b'], 6) {
            let hits = p.blocks_of(&w).unwrap();
            prop_assert_eq!(hits.len(), 1, "{}", w);
            prop_assert!(p.blocks[hits[0]].image_union.contains(m.image_str(&w).unwrap()));
        }
    }

    #[test]
    fn separable_pairs_get_verified_separators(r in regex_strategy(), s in regex_strategy()) {
        let (n0, n1) = (ab_nfa(&r.text()), ab_nfa(&s.text()));
        let (ts, f0, f1) = pair_to_morphism(&n0, &n1).unwrap();
        prop_assume!(ts.morphism.semigroup().size() <= 12);
        let (v, _) = is_fo_separable(&ts.morphism, &f0, &f1, Variant::Omega, &SaturationConfig::default()).unwrap();
        let synth = synthesize_separator(&ts.morphism, &f0, &f1);
        prop_assert_eq!(v.separable, synth.is_ok());
        if let Ok(out) = synth {
            prop_assert!(out.bound.admits(out.rank));
            let report = verify_separator(&out.formula, &n0, &n1, 8).unwrap();
            prop_assert!(report.passed, "{:?}", report);
            // reversed languages are separated by the mirrored sentence
            let mirrored = verify_separator(&out.formula.mirror(), &n0.reversed(), &n1.reversed(), 8).unwrap();
            prop_assert!(mirrored.passed, "{:?}", mirrored);
        }
    }
}

#[test]
fn unary_regexes_separate_by_threshold() {
    // a^1..a^3 against a^4+ needs only a length test
    let (n0, _) = nfa_from_regex("a|aa|aaa").unwrap();
    let (n1, _) = nfa_from_regex("aaaa+").unwrap();
    let (ts, f0, f1) = pair_to_morphism(&n0, &n1).unwrap();
    let out = synthesize_separator(&ts.morphism, &f0, &f1).unwrap();
    assert!(verify_separator(&out.formula, &n0, &n1, 10).unwrap().passed);
}
