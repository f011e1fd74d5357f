//! Rank-k equivalence of words, `u ≡_k v`.
//!
//! Two independent procedures:
//!
//! * [`ef_equivalent`] searches the k-round Ehrenfeucht–Fraïssé game.
//! * [`RankTypes`] computes rank-k types bottom-up: the type of a tuple
//!   is its atomic type plus the set of types of its one-point
//!   extensions. Types are interned, so equal ids mean equal types.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use crate::automata::words_up_to;
use crate::error::{Error, Result};

/// Largest rank accepted by [`ef_classes`].
pub const MAX_TABLE_RANK: usize = 4;
/// Longest word length accepted by [`ef_classes`].
pub const MAX_TABLE_LENGTH: usize = 14;

/// Whether `(u, xs)` and `(v, ys)` agree on letters, order and equality.
fn partial_iso<L: PartialEq>(u: &[L], xs: &[u32], v: &[L], ys: &[u32]) -> bool {
    for i in 0..xs.len() {
        if u[xs[i] as usize] != v[ys[i] as usize] {
            return false;
        }
        for j in 0..i {
            if xs[j].cmp(&xs[i]) != ys[j].cmp(&ys[i]) {
                return false;
            }
        }
    }
    true
}

struct Game<'a, L> {
    u: &'a [L],
    v: &'a [L],
    memo: HashMap<(Vec<u32>, Vec<u32>, usize), bool>,
}

impl<L: PartialEq> Game<'_, L> {
    /// Duplicator wins `rounds` more rounds from the position `(xs, ys)`,
    /// assumed to be a partial isomorphism.
    fn duplicator_wins(&mut self, xs: &mut Vec<u32>, ys: &mut Vec<u32>, rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        let key = (xs.clone(), ys.clone(), rounds);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let wins = self.answers_all(xs, ys, rounds, false) && self.answers_all(xs, ys, rounds, true);
        self.memo.insert(key, wins);
        wins
    }

    /// Every Spoiler move in one word has a winning answer in the other.
    /// `flip` means Spoiler plays in `v`.
    fn answers_all(&mut self, xs: &mut Vec<u32>, ys: &mut Vec<u32>, rounds: usize, flip: bool) -> bool {
        let (n_spoil, n_dup) = if flip {
            (self.v.len(), self.u.len())
        } else {
            (self.u.len(), self.v.len())
        };
        for p in 0..n_spoil as u32 {
            let mut answered = false;
            for q in 0..n_dup as u32 {
                let (a, b) = if flip { (q, p) } else { (p, q) };
                xs.push(a);
                ys.push(b);
                let ok = partial_iso(self.u, xs, self.v, ys) && self.duplicator_wins(xs, ys, rounds - 1);
                xs.pop();
                ys.pop();
                if ok {
                    answered = true;
                    break;
                }
            }
            if !answered {
                return false;
            }
        }
        true
    }
}

/// `u ≡_k v` by game search.
pub fn ef_equivalent_on<L: PartialEq>(u: &[L], v: &[L], k: usize) -> bool {
    let mut g = Game {
        u,
        v,
        memo: HashMap::new(),
    };
    g.duplicator_wins(&mut Vec::new(), &mut Vec::new(), k)
}

/// `u ≡_k v` for character words, by game search.
pub fn ef_equivalent(u: &str, v: &str, k: usize) -> bool {
    let u: Vec<char> = u.chars().collect();
    let v: Vec<char> = v.chars().collect();
    ef_equivalent_on(&u, &v, k)
}

/// Atomic type of a tuple: its letters and the pairwise order.
type Atomic<L> = (Vec<L>, Vec<std::cmp::Ordering>);

/// Interner of rank-k types. Ids are only comparable within one table.
pub struct RankTypes<L> {
    ids: HashMap<(Atomic<L>, BTreeSet<usize>), usize>,
}

impl<L: Clone + Eq + Hash> Default for RankTypes<L> {
    fn default() -> Self {
        RankTypes {
            ids: HashMap::new(),
        }
    }
}

impl<L: Clone + Eq + Hash> RankTypes<L> {
    pub fn new() -> Self {
        Self::default()
    }

    fn tuple_type(&mut self, w: &[L], xs: &mut Vec<u32>, k: usize) -> usize {
        let letters = xs.iter().map(|&x| w[x as usize].clone()).collect();
        let mut order = Vec::new();
        for i in 0..xs.len() {
            for j in 0..i {
                order.push(xs[j].cmp(&xs[i]));
            }
        }
        let mut children = BTreeSet::new();
        if k > 0 {
            for p in 0..w.len() as u32 {
                xs.push(p);
                children.insert(self.tuple_type(w, xs, k - 1));
                xs.pop();
            }
        }
        let len = self.ids.len();
        *self.ids.entry(((letters, order), children)).or_insert(len)
    }

    /// Rank-k type id of a word.
    pub fn word_type(&mut self, w: &[L], k: usize) -> usize {
        self.tuple_type(w, &mut Vec::new(), k)
    }

    /// Number of distinct types interned so far, over all ranks.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// `u ≡_k v` by comparing interned rank-k types.
pub fn ef_equivalent_by_types(u: &str, v: &str, k: usize) -> bool {
    let u: Vec<char> = u.chars().collect();
    let v: Vec<char> = v.chars().collect();
    let mut t = RankTypes::new();
    t.word_type(&u, k) == t.word_type(&v, k)
}

/// Partition of all nonempty words up to a length into `≡_k` classes.
#[derive(Clone, Debug)]
pub struct EfTypeTable {
    pub k: usize,
    pub words: Vec<String>,
    /// Dense class id of each word, numbered by first occurrence.
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl EfTypeTable {
    pub fn class_of_word(&self, w: &str) -> Option<usize> {
        self.words.iter().position(|x| x == w).map(|i| self.class_of[i])
    }
}

pub fn ef_classes(alphabet: &[char], max_len: usize, k: usize) -> Result<EfTypeTable> {
    if k > MAX_TABLE_RANK {
        return Err(Error::resource("rank for type tables", MAX_TABLE_RANK));
    }
    if max_len > MAX_TABLE_LENGTH {
        return Err(Error::resource("word length for type tables", MAX_TABLE_LENGTH));
    }
    let mut types = RankTypes::new();
    let mut dense: HashMap<usize, usize> = HashMap::new();
    let mut words = Vec::new();
    let mut class_of = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for w in words_up_to(alphabet, max_len) {
        let chars: Vec<char> = w.chars().collect();
        let t = types.word_type(&chars, k);
        let next = dense.len();
        let c = *dense.entry(t).or_insert(next);
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(words.len());
        class_of.push(c);
        words.push(w);
    }
    Ok(EfTypeTable {
        k,
        words,
        class_of,
        classes,
    })
}
