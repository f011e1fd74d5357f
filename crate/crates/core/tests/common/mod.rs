//! Shared inputs and independent oracles for the integration tests.
//!
//! The oracles work on bitmasks and full powersets and do not call the
//! library's saturation, subset or EF code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fosep::automata::{complement, nfa_from_regex, Nfa};
use fosep::semigroup::FiniteSemigroup;
use fosep::subsets::{ElementSet, SubsetFamily};

/// The five-state automaton recognizing both languages of the running
/// example, with states renumbered from 0. `final_state` is 3 for the
/// first language and 1 for the second.
pub fn fig1(final_state: usize) -> Nfa {
    let json = format!(
        r#"{{"states":5,"alphabet":["a","b"],"initial":[0],"final":[{final_state}],
            "transitions":[[0,"b",1],[1,"a",2],[1,"b",4],[2,"a",1],[3,"a",4],[3,"b",1],[4,"a",3]]}}"#
    );
    Nfa::parse_json(&json).unwrap()
}

pub const EXAMPLE_L0: &str = "(b(aa)*b(aa)*a)+";
pub const EXAMPLE_L1: &str = "(b(aa)*b(aa)*a)*b(aa)*";

/// Glushkov automaton of `regex` over the alphabet `{a, b}`.
pub fn ab_nfa(regex: &str) -> Nfa {
    let (n, _) = nfa_from_regex(regex).unwrap();
    n.with_alphabet(&['a', 'b']).unwrap()
}

pub fn complement_nfa(n: &Nfa) -> Nfa {
    complement(n).unwrap()
}

/// The relation `{(p, q)}` of a word on an automaton, by simulation.
pub fn action(n: &Nfa, word: &str) -> BTreeSet<(usize, usize)> {
    let json = n.to_json();
    let mut out = BTreeSet::new();
    for p in 0..json.states {
        let mut current: BTreeSet<usize> = [p].into();
        for c in word.chars() {
            current = json
                .transitions
                .iter()
                .filter(|(q, l, _)| *l == c && current.contains(q))
                .map(|&(_, _, r)| r)
                .collect();
        }
        out.extend(current.into_iter().map(|q| (p, q)));
    }
    out
}

pub fn mask_of(t: &ElementSet) -> u32 {
    t.iter().fold(0, |m, x| m | (1 << x))
}

pub fn masks_of(family: &SubsetFamily) -> BTreeSet<u32> {
    family.maximal_sets().iter().map(mask_of).collect()
}

pub fn mask_product(s: &FiniteSemigroup, a: u32, b: u32) -> u32 {
    let mut out = 0;
    for x in bits(a) {
        for y in bits(b) {
            out |= 1 << s.mul(x, y);
        }
    }
    out
}

pub fn bits(m: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| m & (1 << i) != 0)
}

/// `T^ω ∪ T^(ω+1)`, found by iterating set powers until one is
/// idempotent.
fn mask_omega_rule(s: &FiniteSemigroup, t: u32) -> u32 {
    let mut p = t;
    loop {
        if mask_product(s, p, p) == p {
            return p | mask_product(s, p, t);
        }
        p = mask_product(s, p, t);
    }
}

/// Inserts `t` and all its subsets.
fn add_downset(members: &mut [bool], t: u32) -> bool {
    if members[t as usize] {
        return false;
    }
    let mut sub = t;
    loop {
        members[sub as usize] = true;
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & t;
    }
    true
}

pub fn maximal(members: &[bool]) -> BTreeSet<u32> {
    let all: Vec<u32> = (1..members.len() as u32).filter(|&m| members[m as usize]).collect();
    all.iter()
        .copied()
        .filter(|&m| !all.iter().any(|&o| o != m && o & m == m))
        .collect()
}

/// Saturation over the full powerset: singletons, products, the omega
/// rule and downward closure, applied to every member until nothing
/// changes. Returns the membership table indexed by mask.
pub fn brute_sat(s: &FiniteSemigroup) -> Vec<bool> {
    let n = s.size();
    assert!(n <= 16, "powerset oracle is for small semigroups");
    let mut members = vec![false; 1 << n];
    for x in 0..n {
        add_downset(&mut members, 1 << x);
    }
    loop {
        let current: Vec<u32> = (1..members.len() as u32).filter(|&m| members[m as usize]).collect();
        let mut grew = false;
        for &a in &current {
            grew |= add_downset(&mut members, mask_omega_rule(s, a));
            for &b in &current {
                grew |= add_downset(&mut members, mask_product(s, a, b));
            }
        }
        if !grew {
            return members;
        }
    }
}

/// `Sat_∞` by full downset enumeration over `S∞`, from the finite family
/// `finite` (membership table over `S₊`).
///
/// `T^∞` is taken as all `p·q^∞` and `q^∞` with `p, q` products of
/// nonempty sequences over `T`.
pub fn brute_sat_infinity(
    finite_part: &FiniteSemigroup,
    infinite_size: usize,
    mixed: impl Fn(u32, u32) -> u32,
    power: impl Fn(u32) -> u32,
    finite: &[bool],
) -> Vec<bool> {
    let finite_members: Vec<u32> = (1..finite.len() as u32).filter(|&m| finite[m as usize]).collect();
    let mut members = vec![false; 1 << infinite_size];
    for &t in &finite_members {
        // elements of T+
        let mut plus = t;
        loop {
            let next = plus | mask_product(finite_part, plus, t);
            if next == plus {
                break;
            }
            plus = next;
        }
        let mut inf = 0u32;
        for q in bits(plus) {
            let e = power(q);
            inf |= 1 << e;
            for p in bits(plus) {
                inf |= 1 << mixed(p, e);
            }
        }
        add_downset(&mut members, inf);
    }
    loop {
        let current: Vec<u32> = (1..members.len() as u32).filter(|&m| members[m as usize]).collect();
        let mut grew = false;
        for &t in &finite_members {
            for &x in &current {
                let mut prod = 0;
                for s in bits(t) {
                    for y in bits(x) {
                        prod |= 1 << mixed(s, y);
                    }
                }
                grew |= add_downset(&mut members, prod);
            }
        }
        if !grew {
            return members;
        }
    }
}

/// Duplicator wins the `k`-round game on `u` and `v`, by playing it out.
pub fn ef_game(u: &str, v: &str, k: usize) -> bool {
    let u: Vec<char> = u.chars().collect();
    let v: Vec<char> = v.chars().collect();
    game(&u, &v, &mut Vec::new(), &mut Vec::new(), k)
}

fn consistent(u: &[char], v: &[char], pu: &[usize], pv: &[usize]) -> bool {
    (0..pu.len()).all(|i| {
        u[pu[i]] == v[pv[i]]
            && (0..pu.len()).all(|j| pu[i].cmp(&pu[j]) == pv[i].cmp(&pv[j]))
    })
}

fn game(u: &[char], v: &[char], pu: &mut Vec<usize>, pv: &mut Vec<usize>, rounds: usize) -> bool {
    if !consistent(u, v, pu, pv) {
        return false;
    }
    if rounds == 0 {
        return true;
    }
    for spoiler_in_u in [true, false] {
        let (here, there) = if spoiler_in_u { (u, v) } else { (v, u) };
        for p in 0..here.len() {
            let answered = (0..there.len()).any(|q| {
                let (a, b) = if spoiler_in_u { (p, q) } else { (q, p) };
                pu.push(a);
                pv.push(b);
                let ok = game(u, v, pu, pv, rounds - 1);
                pu.pop();
                pv.pop();
                ok
            });
            if !answered {
                return false;
            }
        }
    }
    true
}
