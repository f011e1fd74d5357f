//! The semigroup of subsets `2^S` and downset-closed families of subsets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::semigroup::{Element, FiniteSemigroup};

/// A subset of the elements of a finite semigroup, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64).max(1)],
        }
    }

    pub fn singleton(universe: usize, x: Element) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    pub fn full(universe: usize) -> Self {
        Self::from_elements(universe, 0..universe as Element)
    }

    pub fn from_elements(universe: usize, xs: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(universe);
        for x in xs {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, x: Element) {
        self.words[x as usize / 64] |= 1 << (x % 64);
    }

    #[inline]
    pub fn remove(&mut self, x: Element) {
        self.words[x as usize / 64] &= !(1 << (x % 64));
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.words
            .get(x as usize / 64)
            .is_some_and(|w| w >> (x % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut u = self.clone();
        u.union_with(other);
        u
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as Element * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }
}

impl Ord for ElementSet {
    /// Lexicographic on the sorted member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `T·T' = {s·t : s ∈ T, t ∈ T'}`.
pub fn set_product(s: &FiniteSemigroup, t: &ElementSet, u: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(s.size());
    let right: Vec<Element> = u.iter().collect();
    for x in t.iter() {
        for &y in &right {
            out.insert(s.mul(x, y));
        }
    }
    out
}

/// `T^ω` and `T^(ω+1)` in the subset semigroup.
pub fn set_omega_pair(s: &FiniteSemigroup, t: &ElementSet) -> (ElementSet, ElementSet) {
    // powers[i] = T^(i+1); stop at the first repeated power
    let mut seen: HashMap<ElementSet, usize> = HashMap::new();
    let mut powers = vec![t.clone()];
    seen.insert(t.clone(), 0);
    let (start, period) = loop {
        let next = set_product(s, powers.last().unwrap(), t);
        if let Some(&i) = seen.get(&next) {
            break (i, powers.len() - i);
        }
        seen.insert(next.clone(), powers.len());
        powers.push(next);
    };
    // smallest exponent k >= start+1 that is a multiple of the period
    let first = start + 1;
    let k = first.div_ceil(period) * period;
    let at = |exp: usize| {
        let idx = exp - 1;
        let idx = if idx < powers.len() {
            idx
        } else {
            start + (idx - start) % period
        };
        powers[idx].clone()
    };
    (at(k), at(k + 1))
}

/// `T^ω ∪ T^(ω+1)`.
pub fn set_omega_closure(s: &FiniteSemigroup, t: &ElementSet) -> ElementSet {
    let (e, e1) = set_omega_pair(s, t);
    e.union(&e1)
}

/// A downset-closed family of element sets, stored by its maximal
/// members. The empty set is always an implicit member.
#[derive(Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    universe: usize,
    maximal: Vec<ElementSet>,
}

impl SubsetFamily {
    pub fn new(universe: usize) -> Self {
        SubsetFamily {
            universe,
            maximal: Vec::new(),
        }
    }

    /// The downset of all singletons.
    pub fn singletons(universe: usize) -> Self {
        SubsetFamily {
            universe,
            maximal: (0..universe as Element)
                .map(|x| ElementSet::singleton(universe, x))
                .collect(),
        }
    }

    pub fn from_sets(universe: usize, sets: impl IntoIterator<Item = ElementSet>) -> Self {
        let mut f = Self::new(universe);
        for s in sets {
            f.insert(s);
        }
        f
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Maximal members in increasing order.
    pub fn maximal_sets(&self) -> &[ElementSet] {
        &self.maximal
    }

    pub fn len(&self) -> usize {
        self.maximal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn contains(&self, t: &ElementSet) -> bool {
        t.is_empty() || self.maximal.iter().any(|m| t.is_subset(m))
    }

    /// A maximal member containing `t`, the least one in set order.
    pub fn dominating(&self, t: &ElementSet) -> Option<&ElementSet> {
        self.maximal.iter().find(|m| t.is_subset(m))
    }

    /// Adds `t` and everything below it. Returns whether the family grew.
    pub fn insert(&mut self, t: ElementSet) -> bool {
        if self.contains(&t) {
            return false;
        }
        self.maximal.retain(|m| !m.is_subset(&t));
        let pos = self.maximal.binary_search(&t).unwrap_err();
        self.maximal.insert(pos, t);
        true
    }

    /// `∪F`, the union of all members.
    pub fn union_of(&self) -> ElementSet {
        let mut u = ElementSet::empty(self.universe);
        for m in &self.maximal {
            u.union_with(m);
        }
        u
    }

    /// `|∪F|`.
    pub fn index(&self) -> usize {
        self.union_of().len()
    }

    /// Sorted lists of sorted element ids, one per maximal set.
    pub fn to_lists(&self) -> Vec<Vec<Element>> {
        self.maximal.iter().map(ElementSet::to_vec).collect()
    }

    /// True when every member has at most one element.
    pub fn only_singletons(&self) -> bool {
        self.maximal.iter().all(|m| m.len() <= 1)
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.maximal).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[Element]) -> ElementSet {
        ElementSet::from_elements(n, xs.iter().copied())
    }

    #[test]
    fn products() {
        let z2 = FiniteSemigroup::cyclic_group(2);
        assert_eq!(set_product(&z2, &set(2, &[1]), &set(2, &[1])), set(2, &[0]));
        assert_eq!(
            set_product(&z2, &set(2, &[0, 1]), &set(2, &[1])),
            set(2, &[0, 1])
        );
        assert!(set_product(&z2, &ElementSet::empty(2), &set(2, &[1])).is_empty());
    }

    #[test]
    fn omega_closure_in_z2() {
        let z2 = FiniteSemigroup::cyclic_group(2);
        assert_eq!(set_omega_closure(&z2, &set(2, &[1])), set(2, &[0, 1]));
        assert_eq!(set_omega_closure(&z2, &set(2, &[0])), set(2, &[0]));
        let (e, _) = set_omega_pair(&z2, &set(2, &[1]));
        assert_eq!(set_product(&z2, &e, &e), e);
    }

    #[test]
    fn omega_pair_with_long_tail() {
        // Z/3 element 1 in a set: powers 1,2,0,1,... period 3, idempotent {0}
        let z3 = FiniteSemigroup::cyclic_group(3);
        let (e, e1) = set_omega_pair(&z3, &set(3, &[1]));
        assert_eq!(e, set(3, &[0]));
        assert_eq!(e1, set(3, &[1]));
    }

    #[test]
    fn family_membership_and_insert() {
        let mut f = SubsetFamily::singletons(2);
        assert!(f.contains(&ElementSet::empty(2)));
        assert!(!f.contains(&set(2, &[0, 1])));
        assert!(f.insert(set(2, &[0, 1])));
        assert!(!f.insert(set(2, &[1])));
        assert_eq!(f.to_lists(), vec![vec![0, 1]]);
        assert_eq!(f.index(), 2);
        assert_eq!(SubsetFamily::new(3).index(), 0);
    }

    #[test]
    fn element_set_order_is_lexicographic() {
        let mut v = vec![set(4, &[1]), set(4, &[0, 2]), set(4, &[0]), set(4, &[])];
        v.sort();
        assert_eq!(v, vec![set(4, &[]), set(4, &[0]), set(4, &[0, 2]), set(4, &[1])]);
    }

    #[test]
    fn wide_sets() {
        let s = set(130, &[0, 64, 129]);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        assert!(set(130, &[64]).is_subset(&s));
    }
}
