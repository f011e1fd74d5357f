//! Complete deterministic automata: subset construction, minimization,
//! complement and syntactic semigroups.

use std::collections::HashMap;

use crate::automata::nfa::{transition_semigroup_capped, Nfa};
use crate::error::{Error, Result};
use crate::morphism::RecognizingMorphism;
use crate::semigroup::DEFAULT_ELEMENT_CAP;
use crate::subsets::ElementSet;

/// Default bound on the number of subset-construction states.
pub const DEFAULT_DFA_CAP: usize = 1 << 16;

/// A complete DFA. The empty word is never accepted, whatever the flag
/// of the initial state says.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Vec<char>,
    pub delta: Vec<Vec<usize>>,
    pub initial: usize,
    pub accepting: Vec<bool>,
}

impl Dfa {
    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn accepts(&self, word: &str) -> bool {
        if word.is_empty() {
            return false;
        }
        let mut q = self.initial;
        for c in word.chars() {
            let Ok(i) = self.alphabet.binary_search(&c) else {
                return false;
            };
            q = self.delta[q][i];
        }
        self.accepting[q]
    }

    /// Subset construction. The initial state is a fresh copy of the
    /// initial subset marked non-accepting, so the language stays in `A+`.
    pub fn determinize(nfa: &Nfa, cap: usize) -> Result<Dfa> {
        let k = nfa.alphabet().len();
        let accepting_states = nfa.accepting();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let step = |set: &[usize], i: usize| -> Vec<usize> {
            let mut out: Vec<usize> = set
                .iter()
                .flat_map(|&q| nfa.successors(q, i).iter().copied())
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        };
        // state 0 is the fresh start; its successors are computed like
        // those of the initial subset
        let start_set = nfa.initial().to_vec();
        subsets.push(start_set);
        delta.push(Vec::new());
        let mut next = 0;
        while next < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for i in 0..k {
                let t = step(&subsets[next], i);
                let id = match index.get(&t) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= cap {
                            return Err(Error::resource("DFA states", cap));
                        }
                        let id = subsets.len();
                        index.insert(t.clone(), id);
                        subsets.push(t);
                        delta.push(Vec::new());
                        id
                    }
                };
                row.push(id);
            }
            delta[next] = row;
            next += 1;
        }
        let accepting = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| i != 0 && s.iter().any(|q| accepting_states.contains(q)))
            .collect();
        Ok(Dfa {
            alphabet: nfa.alphabet().to_vec(),
            delta,
            initial: 0,
            accepting,
        })
    }

    /// Moore partition refinement. All states are assumed reachable, which
    /// holds for the output of [`Dfa::determinize`].
    pub fn minimize(&self) -> Dfa {
        let n = self.states();
        let mut class: Vec<usize> = self.accepting.iter().map(|&a| a as usize).collect();
        let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let sig = (
                    class[q],
                    self.delta[q].iter().map(|&t| class[t]).collect::<Vec<_>>(),
                );
                let len = sig_index.len();
                next[q] = *sig_index.entry(sig).or_insert(len);
            }
            let new_count = sig_index.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber in order of first appearance from the initial state
        let mut order = vec![usize::MAX; count];
        let mut reps = Vec::new();
        let mut queue = std::collections::VecDeque::from([self.initial]);
        order[class[self.initial]] = 0;
        reps.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if order[class[t]] == usize::MAX {
                    order[class[t]] = reps.len();
                    reps.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = reps
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| order[class[t]]).collect())
            .collect();
        let accepting = reps.iter().map(|&q| self.accepting[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            accepting,
        }
    }

    /// Complement within `A+`.
    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for a in &mut d.accepting {
            *a = !*a;
        }
        d
    }

    pub fn to_nfa(&self) -> Nfa {
        let transitions = self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .map(move |(i, &q)| (p, self.alphabet[i], q))
        });
        Nfa::new(
            self.states(),
            self.alphabet.iter().copied(),
            transitions,
            [self.initial],
            (0..self.states()).filter(|&q| self.accepting[q]),
        )
        .expect("complete DFA is a valid NFA")
    }
}

/// Minimal complete DFA of `L ∩ A+`.
pub fn minimal_dfa(nfa: &Nfa) -> Result<Dfa> {
    Ok(Dfa::determinize(nfa, DEFAULT_DFA_CAP)?.minimize())
}

/// NFA for the complement of `L` within `A+` over the same alphabet.
pub fn complement(nfa: &Nfa) -> Result<Nfa> {
    Ok(minimal_dfa(nfa)?.complement().to_nfa())
}

/// Syntactic semigroup of `L ∩ A+`, as the transition semigroup of the
/// minimal DFA, with the accepting set.
pub fn syntactic_semigroup(nfa: &Nfa) -> Result<(RecognizingMorphism, ElementSet)> {
    let dfa = minimal_dfa(nfa)?;
    let as_nfa = dfa.to_nfa();
    let ts = transition_semigroup_capped(&as_nfa, DEFAULT_ELEMENT_CAP)?;
    let acc = ts.accepting_set(as_nfa.initial(), as_nfa.accepting());
    Ok((ts.morphism, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::nfa::{regex_to_nfa, transition_semigroup, words_up_to};
    use crate::automata::regex::parse_regex;

    fn nfa(text: &str) -> Nfa {
        regex_to_nfa(&parse_regex(text).unwrap())
    }

    #[test]
    fn syntactic_examples() {
        let (m, _) = syntactic_semigroup(&nfa("(aa)*")).unwrap();
        assert_eq!(m.semigroup().size(), 2);
        assert!(!m.semigroup().is_aperiodic());

        let all = nfa("(a|b)+");
        let (m, acc) = syntactic_semigroup(&all).unwrap();
        assert_eq!(m.semigroup().size(), 1);
        assert_eq!(acc.len(), 1);

        let (m, _) = syntactic_semigroup(&nfa("a(a|b)*")).unwrap();
        let s = m.semigroup();
        assert_eq!(s.size(), 2);
        assert!(s.elements().all(|x| s.elements().all(|y| s.mul(x, y) == x)));
    }

    #[test]
    fn minimization_preserves_language() {
        for text in ["(aa)*a", "(ab|b)+a*", "(a|b)*abb"] {
            let n = nfa(text);
            let d = Dfa::determinize(&n, 1000).unwrap();
            let m = d.minimize();
            assert!(m.states() <= d.states());
            let c = complement(&n).unwrap();
            for w in words_up_to(n.alphabet(), 7) {
                assert_eq!(m.accepts(&w), n.accepts(&w), "{text} {w} min");
                assert_eq!(c.accepts(&w), !n.accepts(&w), "{text} {w} compl");
            }
        }
    }

    #[test]
    fn syntactic_not_larger_than_transition() {
        for text in ["(b(aa)*b(aa)*a)+", "(a|b)*a(a|b)", "ab*a"] {
            let n = nfa(text);
            let (ts, _) = transition_semigroup(&n).unwrap();
            let (syn, _) = syntactic_semigroup(&n).unwrap();
            assert!(syn.semigroup().size() <= ts.morphism.semigroup().size());
        }
    }
}
