//! Finite semigroups given by a multiplication table.
//!
//! Elements are dense ids `0..n`. Products are looked up in a flat
//! row-major table, so every query is O(1). Besides the table itself this
//! module provides the pieces of Green's theory the decision procedures
//! need: idempotent powers, the H-relation and maximal subgroups.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dense element id of a [`FiniteSemigroup`].
pub type Element = u32;

/// Default bound on the number of elements produced by [`close`].
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 16;

/// Tables up to this size are checked for associativity exhaustively.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<Element>,
}

/// Result of [`FiniteSemigroup::idempotent_power`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdempotentPower {
    /// Smallest `k >= 1` such that `s^k` is idempotent.
    pub exponent: usize,
    pub idempotent: Element,
}

/// Partition of a semigroup into H-classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HClassPartition {
    pub class_index: Vec<usize>,
    pub classes: Vec<Vec<Element>>,
    /// `is_group[c]` iff class `c` contains an idempotent.
    pub is_group: Vec<bool>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a row-major table, checking ranges and
    /// associativity (exhaustive up to 64 elements, sampled above).
    pub fn new(size: usize, table: Vec<Element>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidSemigroup("empty semigroup".into()));
        }
        if table.len() != size * size {
            return Err(Error::InvalidSemigroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x as usize >= size) {
            return Err(Error::InvalidSemigroup(format!(
                "entry {bad} out of range 0..{size}"
            )));
        }
        let s = FiniteSemigroup { size, table };
        s.check_associativity()?;
        Ok(s)
    }

    pub(crate) fn from_table_unchecked(size: usize, table: Vec<Element>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteSemigroup { size, table }
    }

    /// Builds a semigroup from a product closure over `0..size`.
    pub fn from_fn(size: usize, mul: impl Fn(Element, Element) -> Element) -> Result<Self> {
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size as Element {
            for y in 0..size as Element {
                table.push(mul(x, y));
            }
        }
        Self::new(size, table)
    }

    /// The one-element semigroup.
    pub fn trivial() -> Self {
        FiniteSemigroup::from_table_unchecked(1, vec![0])
    }

    /// The cyclic group of order `n`, element `i` standing for `i mod n`
    /// (so `0` is the identity).
    pub fn cyclic_group(n: usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(((x + y) % n) as Element);
            }
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }

    /// The left-zero semigroup `x·y = x` of size `n`.
    pub fn left_zero(n: usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for _ in 0..n {
                table.push(x as Element);
            }
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x as usize * self.size + y as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.size as Element
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    /// Product of a nonempty sequence of elements.
    pub fn product_of(&self, xs: &[Element]) -> Option<Element> {
        let (&first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first, |acc, &y| self.mul(acc, y)))
    }

    pub fn check_associativity(&self) -> Result<()> {
        let n = self.size as Element;
        let check = |x, y, z| {
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                Err(Error::NotAssociative(x, y, z))
            } else {
                Ok(())
            }
        };
        if self.size <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        check(x, y, z)?;
                    }
                }
            }
        } else {
            use rand::RngExt;
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let x = rng.random_range(0..n);
                let y = rng.random_range(0..n);
                let z = rng.random_range(0..n);
                check(x, y, z)?;
            }
        }
        Ok(())
    }

    /// The unique idempotent among the powers of `s`, with the smallest
    /// exponent reaching it.
    pub fn idempotent_power(&self, s: Element) -> IdempotentPower {
        let mut power = s;
        let mut exponent = 1;
        while !self.is_idempotent(power) {
            power = self.mul(power, s);
            exponent += 1;
        }
        IdempotentPower {
            exponent,
            idempotent: power,
        }
    }

    /// `s^ω` and `s^(ω+1)`.
    pub fn omega_pair(&self, s: Element) -> (Element, Element) {
        let e = self.idempotent_power(s).idempotent;
        (e, self.mul(e, s))
    }

    /// Green's H-relation. Two distinct elements share a class iff each is
    /// reachable from the other by right multiplication and by left
    /// multiplication.
    pub fn h_classes(&self) -> HClassPartition {
        let n = self.size;
        let words = n.div_ceil(64);
        let mut right = vec![0u64; n * words];
        let mut left = vec![0u64; n * words];
        for x in 0..n {
            for y in 0..n {
                let r = self.table[x * n + y] as usize;
                right[x * words + r / 64] |= 1 << (r % 64);
                let l = self.table[y * n + x] as usize;
                left[x * words + l / 64] |= 1 << (l % 64);
            }
        }
        let has = |rows: &[u64], x: usize, y: usize| rows[x * words + y / 64] >> (y % 64) & 1 == 1;
        let mut class_index = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let mut is_group = Vec::new();
        for x in 0..n {
            if class_index[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![x as Element];
            class_index[x] = id;
            for y in x + 1..n {
                if class_index[y] == usize::MAX
                    && has(&right, x, y)
                    && has(&right, y, x)
                    && has(&left, x, y)
                    && has(&left, y, x)
                {
                    class_index[y] = id;
                    members.push(y as Element);
                }
            }
            is_group.push(members.iter().any(|&m| self.is_idempotent(m)));
            classes.push(members);
        }
        HClassPartition {
            class_index,
            classes,
            is_group,
        }
    }

    /// The H-classes containing an idempotent, i.e. the maximal subgroups.
    pub fn maximal_subgroups(&self) -> Vec<Vec<Element>> {
        let h = self.h_classes();
        h.classes
            .into_iter()
            .zip(h.is_group)
            .filter_map(|(c, g)| g.then_some(c))
            .collect()
    }

    /// `s^ω = s^(ω+1)` for every element.
    pub fn is_aperiodic(&self) -> bool {
        self.elements().all(|s| {
            let (e, e1) = self.omega_pair(s);
            e == e1
        })
    }

    /// Cartesian product with componentwise multiplication. The pair
    /// `(x, y)` gets id `x * other.size() + y`.
    pub fn product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let (n0, n1) = (self.size, other.size);
        let n = n0 * n1;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let (a0, a1) = ((a / n1) as Element, (a % n1) as Element);
            for b in 0..n {
                let (b0, b1) = ((b / n1) as Element, (b % n1) as Element);
                table.push(self.mul(a0, b0) * n1 as Element + other.mul(a1, b1));
            }
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }

    /// The opposite semigroup, `x ∘ y = y·x`.
    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.size;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.table[y * n + x];
            }
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }

    /// Subsemigroup generated by `gens`, as a sorted element list.
    pub fn generated_by(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.size];
        let mut stack: Vec<Element> = Vec::new();
        for &g in gens {
            if !seen[g as usize] {
                seen[g as usize] = true;
                stack.push(g);
            }
        }
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.size as Element)
            .filter(|&x| seen[x as usize])
            .collect()
    }

    /// Renders the text format: `semigroup n` followed by the table rows.
    pub fn to_text(&self) -> String {
        let mut out = format!("semigroup {}\n", self.size);
        for x in 0..self.size {
            let row: Vec<String> = self.table[x * self.size..(x + 1) * self.size]
                .iter()
                .map(|v| v.to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSemigroup(size={})", self.size)
    }
}

/// A semigroup read from the text format, with its optional letter map.
#[derive(Clone, Debug)]
pub struct SemigroupSpec {
    pub semigroup: FiniteSemigroup,
    pub generators: Option<Vec<(char, Element)>>,
}

/// Parses the semigroup text format:
///
/// ```text
/// semigroup 2
/// 0 1
/// 1 0
/// generators
/// a 1
/// ```
///
/// Blank lines and `#` comments are ignored.
pub fn parse_semigroup_text(text: &str) -> Result<SemigroupSpec> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing `semigroup n` header"))?;
    let size: usize = header
        .strip_prefix("semigroup")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(lno, "expected `semigroup n`"))?;
    let mut table = Vec::with_capacity(size * size);
    for row in 0..size {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("missing table row {row}")))?;
        let entries: Vec<Element> = line
            .split_whitespace()
            .map(|t| t.parse::<Element>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(lno, e.to_string()))?;
        if entries.len() != size {
            return Err(Error::parse(
                lno,
                format!("row has {} entries, expected {size}", entries.len()),
            ));
        }
        table.extend(entries);
    }
    let semigroup = FiniteSemigroup::new(size, table)?;
    let mut generators = None;
    if let Some((lno, line)) = lines.next() {
        if line != "generators" {
            return Err(Error::parse(lno, "expected `generators` section"));
        }
        let mut gens = Vec::new();
        for (lno, line) in lines {
            let mut parts = line.split_whitespace();
            let letter = parts
                .next()
                .and_then(|l| {
                    let mut cs = l.chars();
                    let c = cs.next()?;
                    (cs.next().is_none() && c.is_ascii_alphanumeric()).then_some(c)
                })
                .ok_or_else(|| Error::parse(lno, "generator letter must be one alphanumeric"))?;
            let id: Element = parts
                .next()
                .and_then(|t| t.parse().ok())
                .filter(|&id: &Element| (id as usize) < size)
                .ok_or_else(|| Error::parse(lno, "generator needs an element id in range"))?;
            if gens.iter().any(|&(l, _)| l == letter) {
                return Err(Error::parse(lno, format!("letter {letter} defined twice")));
            }
            gens.push((letter, id));
        }
        gens.sort();
        generators = Some(gens);
    }
    Ok(SemigroupSpec {
        semigroup,
        generators,
    })
}

/// Outcome of closing a set of generators under a product.
pub struct Closure<E> {
    /// Elements in discovery order; the id of `elements[i]` is `i`.
    pub elements: Vec<E>,
    pub semigroup: FiniteSemigroup,
    /// Element id of each generator.
    pub generator_ids: Vec<Element>,
    /// Shortlex-least generator word evaluating to each element.
    pub witnesses: Vec<Vec<usize>>,
}

/// Closes `gens` under `mul`, breadth-first over word length with
/// generators tried in order, so witnesses are shortlex-least.
///
/// The multiplication table is assembled from the right Cayley graph,
/// which means `mul` is only ever evaluated against generators.
pub fn close<E, F>(gens: &[E], mul: F, cap: usize) -> Result<Closure<E>>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    if gens.is_empty() {
        return Err(Error::InvalidSemigroup("no generators".into()));
    }
    let mut index: HashMap<E, Element> = HashMap::new();
    let mut elements: Vec<E> = Vec::new();
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    let mut generator_ids = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let id = *index.entry(g.clone()).or_insert_with(|| {
            elements.push(g.clone());
            witnesses.push(vec![i]);
            (elements.len() - 1) as Element
        });
        generator_ids.push(id);
    }
    let k = gens.len();
    let mut right: Vec<Element> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let y = mul(&elements[next], g);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::resource("semigroup elements", cap));
                    }
                    let id = elements.len() as Element;
                    let mut w = witnesses[next].clone();
                    w.push(gi);
                    witnesses.push(w);
                    elements.push(y.clone());
                    index.insert(y, id);
                    id
                }
            };
            right.push(id);
            debug_assert_eq!(right.len(), next * k + gi + 1);
        }
        next += 1;
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for w in &witnesses {
            let v = w
                .iter()
                .fold(x as Element, |acc, &g| right[acc as usize * k + g]);
            table.push(v);
        }
    }
    Ok(Closure {
        elements,
        semigroup: FiniteSemigroup::from_table_unchecked(n, table),
        generator_ids,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteSemigroup {
        // 0 = e, 1 = a
        FiniteSemigroup::cyclic_group(2)
    }

    #[test]
    fn idempotent_generator_closes_to_itself() {
        let c = close(&[0u8], |_, _| 0u8, 10).unwrap();
        assert_eq!(c.semigroup.size(), 1);
    }

    #[test]
    fn z2_closure_has_witness_aa_for_identity() {
        // a = true (odd), e = false (even)
        let c = close(&[true], |x, y| x ^ y, 10).unwrap();
        assert_eq!(c.semigroup.size(), 2);
        let e = c.elements.iter().position(|&x| !x).unwrap();
        assert_eq!(c.witnesses[e], vec![0, 0]);
    }

    #[test]
    fn closure_respects_cap() {
        let err = close(&[1u32], |x, y| (x + y) % 100, 10).err().unwrap();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn idempotent_powers() {
        let s = z2();
        assert_eq!(
            s.idempotent_power(0),
            IdempotentPower {
                exponent: 1,
                idempotent: 0
            }
        );
        assert_eq!(
            s.idempotent_power(1),
            IdempotentPower {
                exponent: 2,
                idempotent: 0
            }
        );
        // a² = 0 with 0 absorbing: elements {a=0, z=1}
        let nil = FiniteSemigroup::from_fn(2, |_, _| 1).unwrap();
        assert_eq!(nil.idempotent_power(0).idempotent, 1);
    }

    #[test]
    fn h_classes_of_small_semigroups() {
        let t = FiniteSemigroup::trivial().h_classes();
        assert_eq!(t.classes, vec![vec![0]]);
        assert_eq!(t.is_group, vec![true]);

        let z = z2().h_classes();
        assert_eq!(z.classes, vec![vec![0, 1]]);
        assert_eq!(z.is_group, vec![true]);

        let lz = FiniteSemigroup::left_zero(2).h_classes();
        assert_eq!(lz.classes, vec![vec![0], vec![1]]);
    }

    #[test]
    fn maximal_subgroups_of_products() {
        let p = FiniteSemigroup::left_zero(2).product(&z2());
        let mut groups = p.maximal_subgroups();
        groups.sort();
        assert_eq!(groups, vec![vec![0, 1], vec![2, 3]]);
        let zz = z2().product(&z2());
        assert_eq!(zz.size(), 4);
        assert!(!zz.is_aperiodic());
        assert_eq!(zz.maximal_subgroups().len(), 1);
    }

    #[test]
    fn aperiodicity() {
        assert!(FiniteSemigroup::trivial().is_aperiodic());
        assert!(!z2().is_aperiodic());
        assert!(FiniteSemigroup::left_zero(3).is_aperiodic());
        let p = z2().product(&FiniteSemigroup::trivial());
        assert_eq!(p.table(), z2().table());
    }

    #[test]
    fn rejects_non_associative_tables() {
        // x·y = 1 - x fails associativity
        let err = FiniteSemigroup::from_fn(2, |x, _| 1 - x).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn text_format_round_trip() {
        let text = "semigroup 2\n0 1\n1 0\ngenerators\na 1\n";
        let spec = parse_semigroup_text(text).unwrap();
        assert_eq!(spec.semigroup, z2());
        assert_eq!(spec.generators, Some(vec![('a', 1)]));
        let again = parse_semigroup_text(&spec.semigroup.to_text()).unwrap();
        assert_eq!(again.semigroup, z2());
        assert!(again.generators.is_none());
    }

    #[test]
    fn text_format_errors() {
        assert!(parse_semigroup_text("semigroup 2\n0 1\n").is_err());
        assert!(parse_semigroup_text("semigroup 1\n5\n").is_err());
        assert!(parse_semigroup_text("group 1\n0\n").is_err());
        assert!(parse_semigroup_text("semigroup 1\n0\ngenerators\nab 0\n").is_err());
    }

    #[test]
    fn opposite_swaps_arguments() {
        let lz = FiniteSemigroup::left_zero(2);
        let op = lz.opposite();
        assert_eq!(op.mul(0, 1), 1);
        assert_eq!(op.mul(1, 0), 0);
    }
}
