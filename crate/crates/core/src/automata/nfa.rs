//! Nondeterministic automata without ε-transitions and their transition
//! semigroups of boolean relations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::automata::regex::Regex;
use crate::error::{Error, Result};
use crate::morphism::RecognizingMorphism;
use crate::semigroup::DEFAULT_ELEMENT_CAP;
use crate::subsets::ElementSet;

/// An ε-free NFA. `delta[q][i]` lists the successors of `q` under the
/// `i`-th letter of `alphabet`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    states: usize,
    alphabet: Vec<char>,
    delta: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
}

/// The JSON shape of an NFA file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NfaJson {
    pub states: usize,
    pub alphabet: Vec<char>,
    pub initial: Vec<usize>,
    #[serde(rename = "final")]
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, char, usize)>,
}

impl Nfa {
    /// Builds an NFA, sorting the alphabet. Every letter used by a
    /// transition must be listed in `alphabet`.
    pub fn new(
        states: usize,
        alphabet: impl IntoIterator<Item = char>,
        transitions: impl IntoIterator<Item = (usize, char, usize)>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let alphabet: Vec<char> = alphabet
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if alphabet.is_empty() {
            return Err(Error::InvalidAutomaton("empty alphabet".into()));
        }
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; states];
        for (p, c, q) in transitions {
            let i = alphabet
                .binary_search(&c)
                .map_err(|_| Error::InvalidAutomaton(format!("letter {c} not in alphabet")))?;
            if p >= states || q >= states {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({p}, {c}, {q}) out of range"
                )));
            }
            delta[p][i].push(q);
        }
        for row in &mut delta {
            for succ in row {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let check = |xs: Vec<usize>, what: &str| -> Result<Vec<usize>> {
            let set: BTreeSet<usize> = xs.into_iter().collect();
            if let Some(&bad) = set.iter().find(|&&q| q >= states) {
                return Err(Error::InvalidAutomaton(format!("{what} state {bad} out of range")));
            }
            Ok(set.into_iter().collect())
        };
        Ok(Nfa {
            states,
            alphabet,
            delta,
            initial: check(initial.into_iter().collect(), "initial")?,
            accepting: check(accepting.into_iter().collect(), "final")?,
        })
    }

    pub fn from_json(json: &NfaJson) -> Result<Self> {
        Nfa::new(
            json.states,
            json.alphabet.iter().copied(),
            json.transitions.iter().copied(),
            json.initial.iter().copied(),
            json.accepting.iter().copied(),
        )
    }

    pub fn to_json(&self) -> NfaJson {
        NfaJson {
            states: self.states,
            alphabet: self.alphabet.clone(),
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            transitions: self.transitions().collect(),
        }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let json: NfaJson = serde_json::from_str(text)?;
        Nfa::from_json(&json)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn accepting(&self) -> &[usize] {
        &self.accepting
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.delta[q][letter]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, char, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(move |(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(i, succ)| succ.iter().map(move |&q| (p, self.alphabet[i], q)))
        })
    }

    /// Same automaton over a larger alphabet; new letters have no
    /// transitions.
    pub fn with_alphabet(&self, alphabet: &[char]) -> Result<Self> {
        if let Some(c) = self.alphabet.iter().find(|c| !alphabet.contains(c)) {
            return Err(Error::AlphabetMismatch(format!("letter {c} missing")));
        }
        Nfa::new(
            self.states,
            alphabet.iter().copied(),
            self.transitions(),
            self.initial.iter().copied(),
            self.accepting.iter().copied(),
        )
    }

    /// Membership of a nonempty word. The empty word is never accepted,
    /// languages here live in `A+`.
    pub fn accepts(&self, word: &str) -> bool {
        if word.is_empty() {
            return false;
        }
        let mut current: BTreeSet<usize> = self.initial.iter().copied().collect();
        for c in word.chars() {
            let Ok(i) = self.alphabet.binary_search(&c) else {
                return false;
            };
            current = current
                .iter()
                .flat_map(|&q| self.delta[q][i].iter().copied())
                .collect();
            if current.is_empty() {
                return false;
            }
        }
        self.accepting.iter().any(|q| current.contains(q))
    }

    /// The automaton reading words backwards.
    pub fn reversed(&self) -> Nfa {
        Nfa::new(
            self.states,
            self.alphabet.iter().copied(),
            self.transitions().map(|(p, c, q)| (q, c, p)),
            self.accepting.iter().copied(),
            self.initial.iter().copied(),
        )
        .expect("reversal keeps the automaton valid")
    }

    /// Disjoint union over the union of both alphabets. States of `other`
    /// are shifted by `self.states()`.
    pub fn disjoint_union(&self, other: &Nfa) -> Nfa {
        let alphabet: BTreeSet<char> = self.alphabet.iter().chain(&other.alphabet).copied().collect();
        let k = self.states;
        Nfa::new(
            k + other.states,
            alphabet,
            self.transitions()
                .chain(other.transitions().map(|(p, c, q)| (p + k, c, q + k))),
            self.initial
                .iter()
                .copied()
                .chain(other.initial.iter().map(|q| q + k)),
            self.accepting
                .iter()
                .copied()
                .chain(other.accepting.iter().map(|q| q + k)),
        )
        .expect("union of valid automata is valid")
    }
}

/// Glushkov automaton: state 0 is initial, state `i` stands for the `i`-th
/// letter occurrence. The empty word is never accepted.
pub fn regex_to_nfa(r: &Regex) -> Nfa {
    struct Info {
        nullable: bool,
        first: BTreeSet<usize>,
        last: BTreeSet<usize>,
    }
    fn walk(
        r: &Regex,
        labels: &mut Vec<char>,
        follow: &mut BTreeMap<usize, BTreeSet<usize>>,
    ) -> Info {
        match r {
            Regex::Letter(c) => {
                labels.push(*c);
                let p = labels.len();
                Info {
                    nullable: false,
                    first: BTreeSet::from([p]),
                    last: BTreeSet::from([p]),
                }
            }
            Regex::Concat(xs) => {
                let mut acc = Info {
                    nullable: true,
                    first: BTreeSet::new(),
                    last: BTreeSet::new(),
                };
                for x in xs {
                    let i = walk(x, labels, follow);
                    for &p in &acc.last {
                        follow.entry(p).or_default().extend(&i.first);
                    }
                    if acc.nullable {
                        acc.first.extend(&i.first);
                    }
                    if i.nullable {
                        acc.last.extend(&i.last);
                    } else {
                        acc.last = i.last;
                    }
                    acc.nullable &= i.nullable;
                }
                acc
            }
            Regex::Union(xs) => {
                let mut acc = Info {
                    nullable: false,
                    first: BTreeSet::new(),
                    last: BTreeSet::new(),
                };
                for x in xs {
                    let i = walk(x, labels, follow);
                    acc.nullable |= i.nullable;
                    acc.first.extend(i.first);
                    acc.last.extend(i.last);
                }
                acc
            }
            Regex::Star(x) | Regex::Plus(x) => {
                let mut i = walk(x, labels, follow);
                for &p in &i.last {
                    follow.entry(p).or_default().extend(&i.first);
                }
                if matches!(r, Regex::Star(_)) {
                    i.nullable = true;
                }
                i
            }
        }
    }
    let mut labels = Vec::new();
    let mut follow = BTreeMap::new();
    let info = walk(r, &mut labels, &mut follow);
    let mut transitions = Vec::new();
    for &p in &info.first {
        transitions.push((0, labels[p - 1], p));
    }
    for (&p, qs) in &follow {
        for &q in qs {
            transitions.push((p, labels[q - 1], q));
        }
    }
    Nfa::new(
        labels.len() + 1,
        labels.iter().copied(),
        transitions,
        [0],
        info.last,
    )
    .expect("Glushkov construction is well formed")
}

/// A boolean relation on `0..n`, stored as one bitset row per state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

impl Relation {
    fn words(n: usize) -> usize {
        n.div_ceil(64).max(1)
    }

    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            rows: vec![0; n * Self::words(n)],
        }
    }

    pub fn insert(&mut self, p: usize, q: usize) {
        let w = Self::words(self.n);
        self.rows[p * w + q / 64] |= 1 << (q % 64);
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        let w = Self::words(self.n);
        self.rows[p * w + q / 64] >> (q % 64) & 1 == 1
    }

    pub fn compose(&self, other: &Relation) -> Relation {
        let w = Self::words(self.n);
        let mut out = Relation::empty(self.n);
        for p in 0..self.n {
            for q in 0..self.n {
                if self.contains(p, q) {
                    for k in 0..w {
                        out.rows[p * w + k] |= other.rows[q * w + k];
                    }
                }
            }
        }
        out
    }

    /// Pairs `(p, q)` in the relation.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.n {
            for q in 0..self.n {
                if self.contains(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn relates(&self, from: &[usize], to: &[usize]) -> bool {
        from.iter().any(|&p| to.iter().any(|&q| self.contains(p, q)))
    }
}

/// A recognizing morphism together with the relation behind each element.
#[derive(Clone, Debug)]
pub struct TransitionSemigroup {
    pub morphism: RecognizingMorphism,
    pub relations: Vec<Relation>,
}

impl TransitionSemigroup {
    /// Elements whose relation links some state of `from` to some state
    /// of `to`.
    pub fn accepting_set(&self, from: &[usize], to: &[usize]) -> ElementSet {
        ElementSet::from_elements(
            self.relations.len(),
            self.relations
                .iter()
                .enumerate()
                .filter(|(_, r)| r.relates(from, to))
                .map(|(i, _)| i as u32),
        )
    }
}

/// Transition semigroup generated by the letter relations of `nfa`.
pub fn transition_semigroup_capped(nfa: &Nfa, cap: usize) -> Result<TransitionSemigroup> {
    let letters: Vec<Relation> = (0..nfa.alphabet.len())
        .map(|i| {
            let mut r = Relation::empty(nfa.states);
            for p in 0..nfa.states {
                for &q in &nfa.delta[p][i] {
                    r.insert(p, q);
                }
            }
            r
        })
        .collect();
    let (morphism, relations) = RecognizingMorphism::generate(
        nfa.alphabet.clone(),
        &letters,
        Relation::compose,
        Some(cap),
    )?;
    Ok(TransitionSemigroup {
        morphism,
        relations,
    })
}

/// Transition semigroup of `nfa` with the accepting set of its language.
pub fn transition_semigroup(nfa: &Nfa) -> Result<(TransitionSemigroup, ElementSet)> {
    let ts = transition_semigroup_capped(nfa, DEFAULT_ELEMENT_CAP)?;
    let acc = ts.accepting_set(&nfa.initial, &nfa.accepting);
    Ok((ts, acc))
}

/// One morphism recognizing both languages, through the transition
/// semigroup of the disjoint union, with the two accepting sets.
pub fn pair_to_morphism_capped(
    l0: &Nfa,
    l1: &Nfa,
    cap: usize,
) -> Result<(TransitionSemigroup, ElementSet, ElementSet)> {
    let u = l0.disjoint_union(l1);
    let ts = transition_semigroup_capped(&u, cap)?;
    let k = l0.states;
    let shift = |xs: &[usize]| xs.iter().map(|q| q + k).collect::<Vec<_>>();
    let f0 = ts.accepting_set(&l0.initial, &l0.accepting);
    let f1 = ts.accepting_set(&shift(&l1.initial), &shift(&l1.accepting));
    Ok((ts, f0, f1))
}

pub fn pair_to_morphism(l0: &Nfa, l1: &Nfa) -> Result<(TransitionSemigroup, ElementSet, ElementSet)> {
    pair_to_morphism_capped(l0, l1, DEFAULT_ELEMENT_CAP)
}

/// All nonempty words of length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet: &[char], max_len: usize) -> impl Iterator<Item = String> + '_ {
    let k = alphabet.len();
    (1..=max_len).flat_map(move |len| {
        let total = k.checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut code| {
            let mut w = vec![' '; len];
            for slot in w.iter_mut().rev() {
                *slot = alphabet[code % k];
                code /= k;
            }
            w.into_iter().collect()
        })
    })
}
