//! Separation for languages of infinite words.
//!
//! Input is a finite ω-semigroup `(S₊, S∞)`: a semigroup, a set of
//! infinite elements, the mixed product `S₊ × S∞ → S∞` and the infinite
//! power `s ↦ s^∞`. The finite family `Sat(α₊)` is lifted to a family of
//! subsets of `S∞` by two rules, `T ↦ T^∞` and `(T, X) ↦ T·X`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::RecognizingMorphism;
use crate::saturation::{
    saturate, separability_from_family, SaturationConfig, SeparabilityVerdict, Variant,
};
use crate::semigroup::{parse_semigroup_text, Element, FiniteSemigroup};
use crate::subsets::{ElementSet, SubsetFamily};
use crate::synthesis::RankBound;

#[derive(Clone, Debug)]
pub struct OmegaSemigroup {
    finite: FiniteSemigroup,
    infinite_size: usize,
    mixed: Vec<Element>,
    power: Vec<Element>,
}

impl OmegaSemigroup {
    /// Validates the tables: mixed associativity, `s·s^∞ = s^∞`,
    /// `(s^n)^∞ = s^∞` for `n ≤ 4` and `(st)^∞ = s·(ts)^∞`.
    pub fn new(
        finite: FiniteSemigroup,
        infinite_size: usize,
        mixed: Vec<Element>,
        power: Vec<Element>,
    ) -> Result<Self> {
        let n = finite.size();
        let bad = |m: String| Err(Error::InvalidOmegaSemigroup(m));
        if infinite_size == 0 {
            return bad("no infinite elements".into());
        }
        if mixed.len() != n * infinite_size {
            return bad(format!(
                "mixed table has {} entries, expected {}",
                mixed.len(),
                n * infinite_size
            ));
        }
        if power.len() != n {
            return bad(format!("infinite power has {} entries, expected {n}", power.len()));
        }
        if let Some(x) = mixed.iter().chain(&power).find(|&&x| x as usize >= infinite_size) {
            return bad(format!("infinite element {x} out of range"));
        }
        let w = OmegaSemigroup {
            finite,
            infinite_size,
            mixed,
            power,
        };
        let s = &w.finite;
        for a in s.elements() {
            for b in s.elements() {
                for x in 0..infinite_size as Element {
                    if w.mixed(s.mul(a, b), x) != w.mixed(a, w.mixed(b, x)) {
                        return bad(format!("mixed associativity fails at ({a}, {b}, {x})"));
                    }
                }
                if w.power(s.mul(a, b)) != w.mixed(a, w.power(s.mul(b, a))) {
                    return bad(format!("(st)^inf = s(ts)^inf fails at ({a}, {b})"));
                }
            }
            if w.mixed(a, w.power(a)) != w.power(a) {
                return bad(format!("s·s^inf = s^inf fails at {a}"));
            }
            let mut p = a;
            for k in 2..=4 {
                p = s.mul(p, a);
                if w.power(p) != w.power(a) {
                    return bad(format!("(s^{k})^inf = s^inf fails at {a}"));
                }
            }
        }
        Ok(w)
    }

    pub fn finite(&self) -> &FiniteSemigroup {
        &self.finite
    }

    pub fn infinite_size(&self) -> usize {
        self.infinite_size
    }

    pub fn mixed(&self, s: Element, x: Element) -> Element {
        self.mixed[s as usize * self.infinite_size + x as usize]
    }

    pub fn power(&self, s: Element) -> Element {
        self.power[s as usize]
    }

    /// `T·X` for `T ⊆ S₊` and `X ⊆ S∞`.
    pub fn set_mixed(&self, t: &ElementSet, x: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.infinite_size);
        for s in t.iter() {
            for y in x.iter() {
                out.insert(self.mixed(s, y));
            }
        }
        out
    }

    /// `T^∞`, the infinite products of sequences over `T`: every such
    /// product is `u·e^∞` for a linked pair `(u, e)` of the subsemigroup
    /// generated by `T`.
    pub fn set_power(&self, t: &ElementSet) -> ElementSet {
        let gens: Vec<Element> = t.iter().collect();
        let generated = self.finite.generated_by(&gens);
        let idempotents: Vec<Element> = generated
            .iter()
            .copied()
            .filter(|&e| self.finite.is_idempotent(e))
            .collect();
        let mut out = ElementSet::empty(self.infinite_size);
        for &u in &generated {
            for &e in &idempotents {
                if self.finite.mul(u, e) == u {
                    out.insert(self.mixed(u, self.power(e)));
                }
            }
        }
        out
    }
}

/// A morphism `(A+, A^ω) → (S₊, S∞)` with the accepting sets of two
/// languages.
#[derive(Clone, Debug)]
pub struct OmegaMorphism {
    pub finite: RecognizingMorphism,
    pub algebra: OmegaSemigroup,
    pub accepting0: ElementSet,
    pub accepting1: ElementSet,
}

impl OmegaMorphism {
    pub fn new(
        algebra: OmegaSemigroup,
        letters: Vec<(char, Element)>,
        accepting0: &[Element],
        accepting1: &[Element],
    ) -> Result<Self> {
        let (alphabet, images): (Vec<char>, Vec<Element>) = letters.into_iter().unzip();
        let finite = RecognizingMorphism::new(algebra.finite.clone(), alphabet, images)?;
        let m = algebra.infinite_size;
        if let Some(x) = accepting0.iter().chain(accepting1).find(|&&x| x as usize >= m) {
            return Err(Error::InvalidOmegaSemigroup(format!(
                "accepting element {x} out of range"
            )));
        }
        Ok(OmegaMorphism {
            finite,
            accepting0: ElementSet::from_elements(m, accepting0.iter().copied()),
            accepting1: ElementSet::from_elements(m, accepting1.iter().copied()),
            algebra,
        })
    }

    /// Image of the ultimately periodic word `u·v^ω`; `u` may be empty.
    pub fn image_lasso(&self, u: &str, v: &str) -> Option<Element> {
        let p = self.algebra.power(self.finite.image_str(v)?);
        if u.is_empty() {
            Some(p)
        } else {
            Some(self.algebra.mixed(self.finite.image_str(u)?, p))
        }
    }
}

/// The finite part of an ω-semigroup file: the text format or a table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiniteJson {
    Text(String),
    Table { size: usize, table: Vec<Vec<Element>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OmegaJson {
    pub finite: FiniteJson,
    pub infinite_size: usize,
    pub mixed: Vec<Vec<Element>>,
    pub infinity_power: Vec<Element>,
    pub letters: BTreeMap<char, Element>,
    #[serde(default)]
    pub accepting0: Vec<Element>,
    #[serde(default)]
    pub accepting1: Vec<Element>,
}

impl OmegaJson {
    pub fn to_morphism(&self) -> Result<OmegaMorphism> {
        let finite = match &self.finite {
            FiniteJson::Text(t) => parse_semigroup_text(t)?.semigroup,
            FiniteJson::Table { size, table } => {
                if table.len() != *size || table.iter().any(|r| r.len() != *size) {
                    return Err(Error::InvalidSemigroup("table is not square".into()));
                }
                FiniteSemigroup::new(*size, table.concat())?
            }
        };
        if self.mixed.iter().any(|r| r.len() != self.infinite_size) {
            return Err(Error::InvalidOmegaSemigroup(
                "mixed rows must have one entry per infinite element".into(),
            ));
        }
        let algebra = OmegaSemigroup::new(
            finite,
            self.infinite_size,
            self.mixed.concat(),
            self.infinity_power.clone(),
        )?;
        OmegaMorphism::new(
            algebra,
            self.letters.iter().map(|(&c, &x)| (c, x)).collect(),
            &self.accepting0,
            &self.accepting1,
        )
    }

    pub fn parse(text: &str) -> Result<OmegaMorphism> {
        let j: OmegaJson = serde_json::from_str(text)?;
        j.to_morphism()
    }

    pub fn from_morphism(m: &OmegaMorphism) -> Self {
        let w = &m.algebra;
        let n = w.finite.size();
        let k = w.infinite_size;
        OmegaJson {
            finite: FiniteJson::Table {
                size: n,
                table: w.finite.table().chunks(n).map(|r| r.to_vec()).collect(),
            },
            infinite_size: k,
            mixed: w.mixed.chunks(k).map(|r| r.to_vec()).collect(),
            infinity_power: w.power.clone(),
            letters: m
                .finite
                .alphabet()
                .iter()
                .copied()
                .zip(m.finite.letter_images().iter().copied())
                .collect(),
            accepting0: m.accepting0.to_vec(),
            accepting1: m.accepting1.to_vec(),
        }
    }
}

/// `Sat_∞`: the least downset-closed family over `S∞` that contains
/// `T^∞` for every `T` in `finite_family` and is closed under `T·X`.
/// Both rules are monotone, so maximal members suffice throughout.
pub fn saturate_infinity(
    finite_family: &SubsetFamily,
    w: &OmegaSemigroup,
    antichain_cap: usize,
) -> Result<SubsetFamily> {
    let mut family = SubsetFamily::new(w.infinite_size);
    let mut queue: Vec<ElementSet> = Vec::new();
    let push = |family: &mut SubsetFamily, queue: &mut Vec<ElementSet>, x: ElementSet| {
        if family.insert(x.clone()) {
            queue.push(x);
        }
        if family.len() > antichain_cap {
            return Err(Error::resource("infinite antichain", antichain_cap));
        }
        Ok(())
    };
    for t in finite_family.maximal_sets() {
        push(&mut family, &mut queue, w.set_power(t))?;
    }
    while let Some(x) = queue.pop() {
        if !family.contains(&x) {
            continue;
        }
        for t in finite_family.maximal_sets() {
            push(&mut family, &mut queue, w.set_mixed(t, &x))?;
        }
    }
    Ok(family)
}

#[derive(Clone, Debug)]
pub struct OmegaSeparation {
    pub verdict: SeparabilityVerdict,
    pub finite_family: SubsetFamily,
    pub infinite_family: SubsetFamily,
    /// `|A| · 2^{|S₊|²} + 1`, reported only.
    pub rank_bound: RankBound,
}

pub fn omega_separable(m: &OmegaMorphism, config: &SaturationConfig) -> Result<OmegaSeparation> {
    omega_separable_sets(m, &m.accepting0, &m.accepting1, config)
}

pub fn omega_separable_sets(
    m: &OmegaMorphism,
    f0: &ElementSet,
    f1: &ElementSet,
    config: &SaturationConfig,
) -> Result<OmegaSeparation> {
    let finite = saturate(&m.finite, Variant::Omega, config)?.family;
    let infinite = saturate_infinity(&finite, &m.algebra, config.antichain_cap)?;
    Ok(OmegaSeparation {
        verdict: separability_from_family(&infinite, f0, f1),
        rank_bound: RankBound::for_morphism(&m.finite).plus(1),
        finite_family: finite,
        infinite_family: infinite,
    })
}

/// For the syntactic ω-semigroup of a language, definability is
/// aperiodicity of the finite part. The accepting set plays no role;
/// it is taken for the caller's documentation.
pub fn is_fo_definable_omega(w: &OmegaSemigroup, _accepting: &ElementSet) -> bool {
    w.finite.is_aperiodic()
}

/// Hand-built ω-semigroups used by the tests and examples.
pub mod algebras {
    use super::*;

    fn build(
        finite: FiniteSemigroup,
        k: usize,
        mixed: impl Fn(Element, Element) -> Element,
        power: impl Fn(Element) -> Element,
        letters: &[(char, Element)],
        acc0: &[Element],
        acc1: &[Element],
    ) -> OmegaMorphism {
        let n = finite.size() as Element;
        let table = (0..n)
            .flat_map(|s| (0..k as Element).map(move |x| (s, x)))
            .map(|(s, x)| mixed(s, x))
            .collect();
        let power = (0..n).map(power).collect();
        let w = OmegaSemigroup::new(finite, k, table, power).expect("hand-built algebra is valid");
        OmegaMorphism::new(w, letters.to_vec(), acc0, acc1).expect("letters generate")
    }

    /// One finite and one infinite element.
    pub fn trivial() -> OmegaMorphism {
        build(FiniteSemigroup::trivial(), 1, |_, _| 0, |_| 0, &[('a', 0)], &[0], &[0])
    }

    /// `S₊ = ({0, 1}, or)` with `a ↦ 1`, `b ↦ 0`; infinite elements
    /// `0 = finitely many a`, `1 = infinitely many a`. The prefix is
    /// absorbed: `s·x = x`.
    pub fn infinitely_many_a() -> OmegaMorphism {
        let or = FiniteSemigroup::from_fn(2, |x, y| x | y).unwrap();
        build(or, 2, |_, x| x, |s| s, &[('a', 1), ('b', 0)], &[1], &[0])
    }

    /// Words with exactly one `b`, classified by the parity of the
    /// `a`-prefix: `(aa)*b a^ω` against `(aa)*ab a^ω`.
    ///
    /// Finite elements: `0` odd `a`-block, `1` even `a`-block, `2` one
    /// `b` after an even prefix, `3` one `b` after an odd prefix, `4` two
    /// or more `b`. Infinite elements: `0` is `a^ω`, `1` and `2` one `b`
    /// after an even or odd prefix, `3` everything else.
    pub fn parity_prefix() -> OmegaMorphism {
        const O: Element = 0;
        const E: Element = 1;
        const BE: Element = 2;
        const BO: Element = 3;
        const Z: Element = 4;
        let mul = |x: Element, y: Element| match (x, y) {
            (O, O) | (E, E) => E,
            (O, E) | (E, O) => O,
            (O, BE) | (E, BO) => BO,
            (O, BO) | (E, BE) => BE,
            (BE, O) | (BE, E) => BE,
            (BO, O) | (BO, E) => BO,
            _ => Z,
        };
        let s = FiniteSemigroup::from_fn(5, mul).unwrap();
        let mixed = |x: Element, y: Element| match (x, y) {
            (O | E, 0) => 0,
            (O, 1) => 2,
            (O, 2) => 1,
            (E, y) => y,
            (BE, 0) => 1,
            (BO, 0) => 2,
            _ => 3,
        };
        let power = |x: Element| if x == O || x == E { 0 } else { 3 };
        build(s, 4, mixed, power, &[('a', O), ('b', BE)], &[1], &[2])
    }

    /// `S₊` the left-zero semigroup on `{0, 1}`: the first letter decides.
    pub fn first_letter() -> OmegaMorphism {
        build(FiniteSemigroup::left_zero(2), 2, |s, _| s, |s| s, &[('a', 0), ('b', 1)], &[0], &[1])
    }

    /// Product of [`first_letter`] and [`infinitely_many_a`]: elements are
    /// `(first letter, contains a)` pairs. `c` is a third letter that
    /// starts like `a` but is not an `a`.
    pub fn first_letter_and_infinitely_many_a() -> OmegaMorphism {
        let s = FiniteSemigroup::left_zero(2).product(&FiniteSemigroup::from_fn(2, |x, y| x | y).unwrap());
        // element id = first * 2 + has_a; infinite id = first * 2 + infinitely_many
        build(
            s,
            4,
            |s, x| (s / 2) * 2 + x % 2,
            |s| s,
            &[('a', 1), ('b', 2), ('c', 0)],
            &[1],
            &[0],
        )
    }

    pub fn all() -> Vec<(&'static str, OmegaMorphism)> {
        vec![
            ("trivial", trivial()),
            ("infinitely-many-a", infinitely_many_a()),
            ("parity-prefix", parity_prefix()),
            ("first-letter", first_letter()),
            ("first-letter-x-infinitely-many-a", first_letter_and_infinitely_many_a()),
        ]
    }
}
