//! Recursive construction of first-order partitions whose blocks have
//! images inside the saturated family.
//!
//! The input is a morphism `β: B+ → 2^S` given by the images of the
//! letters. Three cases:
//!
//! * one letter: blocks `b, b², …, b^(m-1)` and `b^{≥m}`, where `β(b)^m`
//!   is idempotent;
//! * tame (every letter image stabilises the union `∪𝒮` on both sides):
//!   the single block `B+`;
//! * otherwise, for a letter `b` with `β(b)·∪𝒮 ≠ ∪𝒮`, every word splits
//!   uniquely into a prefix in `C+`, an infix in `(b+C+)+` and a suffix in
//!   `b+` where `C = B \ {b}`. Prefixes and suffixes are partitioned
//!   recursively on the smaller alphabet. Infixes are read as words over
//!   the finite alphabet of images of `b+C+` factors, whose semigroup has a
//!   strictly smaller union, and partitioned recursively.
//!
//! When only right stability fails, the construction runs on the opposite
//! semigroup and the resulting formulas are mirrored.
//!
//! Letters inside the builder are indices into the current alphabet.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{simplify, Canonicalizer, Formula, Node, Var};
use crate::semigroup::{close, FiniteSemigroup};
use crate::subsets::{set_product, ElementSet};
use crate::synthesis::RankBound;

type F = Formula<usize>;

/// Bound variables of finished blocks are renamed into the range starting
/// here. Fresh variables stay below it.
const CANONICAL_BASE: Var = 1 << 31;

/// Largest semigroup of subsets enumerated for the tame-case group check.
const GROUP_CHECK_CAP: usize = 512;

#[derive(Clone, Debug)]
pub struct Block {
    pub formula: F,
    /// Upper bound for `∪β(K)` that lies in the saturated family.
    pub image: ElementSet,
    pub tag: String,
}

/// One recursive call, for reporting.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseRecord {
    pub depth: usize,
    pub case: String,
    pub alphabet_size: usize,
    pub index: usize,
    pub blocks: usize,
    pub max_rank: usize,
    pub budget: RankBound,
    pub within_budget: bool,
}

#[derive(Clone, Debug)]
pub struct BuilderConfig {
    pub max_depth: usize,
}

impl Default for BuilderConfig {
    fn default() -> Self {
        BuilderConfig { max_depth: 64 }
    }
}

/// Relativization scopes. Quantifiers of a relativized formula range
/// only over the positions the scope admits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Scope {
    /// positions `≤ x`
    UpTo(Var),
    /// positions `> x`
    After(Var),
    /// the maximal run of `letters` ending at `x`
    RunEnding(Var, Vec<usize>),
    /// the maximal run of `letters` starting right after `x`
    RunAfter(Var, Vec<usize>),
}

/// Relativization state for one scope. Source nodes are kept next to
/// their images so their ids stay valid.
struct ScopeMemo {
    z: Var,
    nodes: HashMap<usize, (F, F)>,
    guards: HashMap<Var, F>,
}

pub struct Builder {
    config: BuilderConfig,
    next_var: Var,
    scope_memo: HashMap<Scope, ScopeMemo>,
    canon: Canonicalizer<usize>,
    pub trace: Vec<CaseRecord>,
}

fn or_all(mut fs: Vec<F>) -> F {
    match fs.len() {
        0 => F::ff(),
        1 => fs.pop().unwrap(),
        _ => F::or(fs),
    }
}

fn and_all(mut fs: Vec<F>) -> F {
    match fs.len() {
        0 => F::tt(),
        1 => fs.pop().unwrap(),
        _ => F::and(fs),
    }
}

/// `∪𝒮` for the semigroup generated by the letter images: the
/// subsemigroup of `S` generated by the union of the images.
pub fn union_of_generated(ambient: &FiniteSemigroup, letters: &[ElementSet]) -> ElementSet {
    let mut u = ElementSet::empty(ambient.size());
    for l in letters {
        u.union_with(l);
    }
    let gens: Vec<u32> = u.iter().collect();
    ElementSet::from_elements(ambient.size(), ambient.generated_by(&gens))
}

impl Builder {
    pub fn new(config: BuilderConfig) -> Self {
        Builder {
            config,
            next_var: 0,
            scope_memo: HashMap::default(),
            canon: Canonicalizer::new(CANONICAL_BASE),
            trace: Vec::new(),
        }
    }

    fn fresh(&mut self) -> Var {
        self.next_var += 1;
        self.next_var
    }

    fn in_letters(letters: &[usize], x: Var) -> F {
        or_all(letters.iter().map(|&c| F::letter(c, x)).collect())
    }

    /// `∀z. z has a letter in `letters``.
    fn all_in(&mut self, letters: &[usize]) -> F {
        let z = self.fresh();
        F::forall(z, Self::in_letters(letters, z))
    }

    /// The first position carries a letter in `letters`.
    fn first_in(&mut self, letters: &[usize]) -> F {
        let (u, v) = (self.fresh(), self.fresh());
        F::exists(
            u,
            F::and2(
                Self::in_letters(letters, u),
                F::not(F::exists(v, F::less(v, u))),
            ),
        )
    }

    /// The last position carries a letter in `letters`.
    fn last_in(&mut self, letters: &[usize]) -> F {
        let (u, v) = (self.fresh(), self.fresh());
        F::exists(
            u,
            F::and2(
                Self::in_letters(letters, u),
                F::not(F::exists(v, F::less(u, v))),
            ),
        )
    }

    fn nonempty(&mut self) -> F {
        let z = self.fresh();
        F::exists(z, F::tt())
    }

    /// At least `i` positions, as a chain of `i` nested quantifiers.
    fn length_at_least(&mut self, i: usize) -> F {
        let vars: Vec<Var> = (0..i).map(|_| self.fresh()).collect();
        let mut f = F::tt();
        for k in (0..i).rev() {
            let body = if k == 0 {
                f
            } else {
                F::and2(F::less(vars[k - 1], vars[k]), f)
            };
            f = F::exists(vars[k], body);
        }
        f
    }

    fn length_exactly(&mut self, i: usize) -> F {
        let at_least = self.length_at_least(i);
        let more = self.length_at_least(i + 1);
        F::and2(at_least, F::not(more))
    }

    fn scope_guard(scope: &Scope, z: Var, y: Var) -> F {
        let le = |a: Var, b: Var| F::or2(F::less(a, b), F::equal(a, b));
        match scope {
            Scope::UpTo(x) => le(y, *x),
            Scope::After(x) => F::less(*x, y),
            Scope::RunEnding(x, letters) => F::and2(
                le(y, *x),
                F::not(F::exists(
                    z,
                    and_all(vec![
                        le(y, z),
                        le(z, *x),
                        F::not(Self::in_letters(letters, z)),
                    ]),
                )),
            ),
            Scope::RunAfter(x, letters) => F::and2(
                F::less(*x, y),
                F::not(F::exists(
                    z,
                    and_all(vec![
                        F::less(*x, z),
                        le(z, y),
                        F::not(Self::in_letters(letters, z)),
                    ]),
                )),
            ),
        }
    }

    /// Restricts every quantifier of `f` to the positions of `scope`.
    fn relativize(&mut self, f: &F, scope: Scope) -> F {
        let mut memo = match self.scope_memo.remove(&scope) {
            Some(m) => m,
            None => ScopeMemo {
                z: self.fresh(),
                nodes: HashMap::default(),
                guards: HashMap::default(),
            },
        };
        let out = Self::relativize_in(f, &scope, &mut memo);
        self.scope_memo.insert(scope, memo);
        out
    }

    fn relativize_in(f: &F, scope: &Scope, memo: &mut ScopeMemo) -> F {
        if let Some((_, g)) = memo.nodes.get(&f.id()) {
            return g.clone();
        }
        let guard = |memo: &mut ScopeMemo, y: Var| {
            let z = memo.z;
            memo.guards
                .entry(y)
                .or_insert_with(|| Self::scope_guard(scope, z, y))
                .clone()
        };
        let g = match f.node() {
            Node::True
            | Node::False
            | Node::Letter(..)
            | Node::Less(..)
            | Node::Equal(..) => f.clone(),
            Node::Not(h) => F::not(Self::relativize_in(h, scope, memo)),
            Node::And(hs) => F::and(hs.iter().map(|h| Self::relativize_in(h, scope, memo)).collect()),
            Node::Or(hs) => F::or(hs.iter().map(|h| Self::relativize_in(h, scope, memo)).collect()),
            Node::Exists(y, h) => {
                let body = Self::relativize_in(h, scope, memo);
                F::exists(*y, F::and2(guard(memo, *y), body))
            }
            Node::Forall(y, h) => {
                let body = Self::relativize_in(h, scope, memo);
                F::forall(*y, F::implies(guard(memo, *y), body))
            }
        };
        memo.nodes.insert(f.id(), (f.clone(), g.clone()));
        g
    }

    /// `L1·L2` from exact formulas for both factors.
    fn concat(&mut self, cut: Var, left: &F, right: &F) -> F {
        let ne = self.nonempty();
        F::exists(
            cut,
            and_all(vec![
                self.relativize(left, Scope::UpTo(cut)),
                self.relativize(right, Scope::After(cut)),
                self.relativize(&ne, Scope::After(cut)),
            ]),
        )
    }

    /// Partition of `B+` for the morphism sending letter `i` to
    /// `letters[i]` inside the subsets of `ambient`.
    pub fn build(&mut self, ambient: &FiniteSemigroup, letters: &[ElementSet]) -> Result<Vec<Block>> {
        self.build_at(ambient, letters, 0)
    }

    fn record(&mut self, depth: usize, case: &str, letters: usize, index: usize, blocks: &[Block], budget: RankBound) {
        let max_rank = blocks.iter().map(|b| b.formula.rank()).max().unwrap_or(0);
        self.trace.push(CaseRecord {
            depth,
            case: case.to_string(),
            alphabet_size: letters,
            index,
            blocks: blocks.len(),
            max_rank,
            within_budget: budget.admits(max_rank),
            budget,
        });
    }

    /// Block formulas are simplified before they are reused as factors.
    /// Simplification is only valid on nonempty words, and every scope a
    /// factor is later relativized to is nonempty.
    ///
    /// They are also canonicalized. Relativized copies are made per
    /// distinct free variable, and rank-based names keep the number of
    /// distinct variables small.
    fn build_at(&mut self, ambient: &FiniteSemigroup, letters: &[ElementSet], depth: usize) -> Result<Vec<Block>> {
        let blocks = self.build_case(ambient, letters, depth)?;
        Ok(blocks
            .into_iter()
            .map(|b| Block {
                formula: self.finish(&b.formula),
                ..b
            })
            .collect())
    }

    fn finish(&mut self, f: &F) -> F {
        self.canon.canonicalize(&simplify(f))
    }

    fn build_case(&mut self, ambient: &FiniteSemigroup, letters: &[ElementSet], depth: usize) -> Result<Vec<Block>> {
        if depth > self.config.max_depth {
            return Err(Error::resource("synthesis recursion depth", self.config.max_depth));
        }
        if letters.is_empty() {
            return Err(Error::Internal("empty alphabet in partition construction".into()));
        }
        let union = union_of_generated(ambient, letters);
        let index = union.len();
        let budget = RankBound::new(letters.len() as u64, (index * index) as u64);
        if letters.len() == 1 {
            let blocks: Vec<Block> = self
                .unary(ambient, &letters[0])
                .into_iter()
                .map(|b| Block {
                    formula: simplify(&b.formula),
                    ..b
                })
                .collect();
            self.record(depth, "unary", 1, index, &blocks, RankBound::new(1, (index * index) as u64));
            return Ok(blocks);
        }
        let left_fail = letters
            .iter()
            .position(|l| set_product(ambient, l, &union) != union);
        let right_fail = letters
            .iter()
            .position(|l| set_product(ambient, &union, l) != union);
        match (left_fail, right_fail) {
            (None, None) => {
                check_covering_group(ambient, letters, &union)?;
                let blocks = vec![Block {
                    formula: F::tt(),
                    image: union,
                    tag: "tame".into(),
                }];
                self.record(depth, "tame", letters.len(), index, &blocks, budget);
                Ok(blocks)
            }
            (Some(b), _) => {
                let blocks = self.non_tame(ambient, letters, b, &union, depth)?;
                self.record(depth, "split-left", letters.len(), index, &blocks, budget);
                Ok(blocks)
            }
            (None, Some(_)) => {
                let opposite = ambient.opposite();
                let blocks = self.build_at(&opposite, letters, depth + 1)?;
                let blocks: Vec<Block> = blocks
                    .into_iter()
                    .map(|b| Block {
                        formula: b.formula.mirror(),
                        image: b.image,
                        tag: format!("mirror({})", b.tag),
                    })
                    .collect();
                self.record(depth, "split-right", letters.len(), index, &blocks, budget);
                Ok(blocks)
            }
        }
    }

    /// Blocks `b^i` for `i < m` and `b^{≥m}`, with `β(b)^m` idempotent.
    fn unary(&mut self, ambient: &FiniteSemigroup, t: &ElementSet) -> Vec<Block> {
        let mut powers = vec![t.clone()];
        loop {
            let p = powers.last().unwrap();
            if set_product(ambient, p, p) == *p {
                break;
            }
            powers.push(set_product(ambient, p, t));
        }
        let m = powers.len();
        // images of b^j for j ≥ m cycle through the group of T^m
        let mut tail = powers[m - 1].clone();
        let mut p = set_product(ambient, &powers[m - 1], t);
        while p != powers[m - 1] {
            tail.union_with(&p);
            p = set_product(ambient, &p, t);
        }
        let mut blocks = Vec::with_capacity(m);
        for (i, image) in powers.iter().enumerate().take(m - 1) {
            blocks.push(Block {
                formula: self.length_exactly(i + 1),
                image: image.clone(),
                tag: format!("length={}", i + 1),
            });
        }
        blocks.push(Block {
            formula: self.length_at_least(m),
            image: tail,
            tag: format!("length>={m}"),
        });
        merge_by_image(blocks)
    }

    fn non_tame(
        &mut self,
        ambient: &FiniteSemigroup,
        letters: &[ElementSet],
        b: usize,
        union: &ElementSet,
        depth: usize,
    ) -> Result<Vec<Block>> {
        let rest: Vec<usize> = (0..letters.len()).filter(|&i| i != b).collect();
        let rest_images: Vec<ElementSet> = rest.iter().map(|&i| letters[i].clone()).collect();

        // prefixes in C+
        let prefixes: Vec<Block> = self
            .build_at(ambient, &rest_images, depth + 1)?
            .into_iter()
            .map(|blk| Block {
                formula: self.finish(&blk.formula.map_letters(|&i| rest[i])),
                ..blk
            })
            .collect();
        // suffixes in b+
        let suffixes: Vec<Block> = self
            .unary(ambient, &letters[b])
            .into_iter()
            .map(|blk| Block {
                formula: self.finish(&blk.formula.map_letters(|_| b)),
                ..blk
            })
            .collect();

        // abstraction alphabet: images of (suffix block)·(prefix block)
        let mut abstract_letters: Vec<ElementSet> = Vec::new();
        let mut pairs_of: Vec<Vec<(usize, usize)>> = Vec::new();
        for (hi, h) in suffixes.iter().enumerate() {
            for (li, l) in prefixes.iter().enumerate() {
                let img = set_product(ambient, &h.image, &l.image);
                match abstract_letters.iter().position(|x| *x == img) {
                    Some(k) => pairs_of[k].push((hi, li)),
                    None => {
                        abstract_letters.push(img);
                        pairs_of.push(vec![(hi, li)]);
                    }
                }
            }
        }
        let inner_union = union_of_generated(ambient, &abstract_letters);
        if inner_union.len() >= union.len() {
            return Err(Error::Internal(format!(
                "index did not decrease ({} -> {})",
                union.len(),
                inner_union.len()
            )));
        }
        let abstract_blocks = self.build_at(ambient, &abstract_letters, depth + 1)?;

        // infix formulas: quantifiers range over distinguished positions
        // (a b followed by a letter of C) and abstract letters are decoded
        // from the runs around them
        let decoded: Vec<HashMap<Var, F>> = vec![HashMap::default(); abstract_letters.len()];
        let mut infix = InfixLift {
            b,
            rest: rest.clone(),
            suffixes: &suffixes,
            prefixes: &prefixes,
            pairs_of: &pairs_of,
            decoded,
            vars: HashMap::default(),
            guards: HashMap::default(),
            memo: HashMap::default(),
        };
        let domain = {
            let first_b = self.first_in(&[b]);
            let last_c = self.last_in(&rest);
            F::and2(first_b, last_c)
        };
        let mut infixes = Vec::with_capacity(abstract_blocks.len());
        for blk in &abstract_blocks {
            let lifted = infix.lift(self, &blk.formula);
            infixes.push(Block {
                formula: F::and2(lifted, domain.clone()),
                image: blk.image.clone(),
                tag: "infix".into(),
            });
        }

        // exact formulas for the three factor kinds
        let all_c = self.all_in(&rest);
        let all_b = self.all_in(&[b]);
        let prefixes: Vec<Block> = prefixes
            .into_iter()
            .map(|blk| Block {
                formula: F::and2(blk.formula, all_c.clone()),
                tag: "prefix".into(),
                ..blk
            })
            .collect();
        let suffixes: Vec<Block> = suffixes
            .into_iter()
            .map(|blk| Block {
                formula: F::and2(blk.formula, all_b.clone()),
                tag: "suffix".into(),
                ..blk
            })
            .collect();

        let outer = self.fresh();
        let inner = self.fresh();
        let mut out: Vec<Block> = Vec::new();
        let product = |xs: &[&ElementSet]| {
            let mut acc = xs[0].clone();
            for x in &xs[1..] {
                acc = set_product(ambient, &acc, x);
            }
            acc
        };
        // infix·suffix, used alone and after a prefix
        let mut ks: Vec<(F, ElementSet)> = Vec::new();
        for k in &infixes {
            for h in &suffixes {
                let f = self.concat(inner, &k.formula, &h.formula);
                ks.push((f, product(&[&k.image, &h.image])));
            }
        }
        for l in &prefixes {
            for (f, img) in &ks {
                out.push(Block {
                    formula: self.concat(outer, &l.formula, f),
                    image: product(&[&l.image, img]),
                    tag: "prefix.infix.suffix".into(),
                });
            }
        }
        for (f, img) in ks {
            out.push(Block {
                formula: f,
                image: img,
                tag: "infix.suffix".into(),
            });
        }
        for l in &prefixes {
            for h in &suffixes {
                out.push(Block {
                    formula: self.concat(outer, &l.formula, &h.formula),
                    image: product(&[&l.image, &h.image]),
                    tag: "prefix.suffix".into(),
                });
            }
            for k in &infixes {
                out.push(Block {
                    formula: self.concat(outer, &l.formula, &k.formula),
                    image: product(&[&l.image, &k.image]),
                    tag: "prefix.infix".into(),
                });
            }
        }
        out.extend(prefixes);
        out.extend(infixes);
        out.extend(suffixes);
        Ok(merge_by_image(out))
    }
}

/// Translation of formulas over the abstraction alphabet into formulas
/// over `B` that talk about distinguished positions.
struct InfixLift<'a> {
    b: usize,
    rest: Vec<usize>,
    suffixes: &'a [Block],
    prefixes: &'a [Block],
    pairs_of: &'a [Vec<(usize, usize)>],
    decoded: Vec<HashMap<Var, F>>,
    /// Variables of the abstract formula share the canonical range with
    /// the factor formulas, so they are moved to fresh ones.
    vars: HashMap<Var, Var>,
    guards: HashMap<Var, F>,
    memo: HashMap<usize, (F, F)>,
}

impl InfixLift<'_> {
    fn var(&mut self, builder: &mut Builder, x: Var) -> Var {
        *self.vars.entry(x).or_insert_with(|| builder.fresh())
    }

    /// `x` carries a `b` and `x+1` a letter of `C`.
    fn distinguished(&mut self, builder: &mut Builder, x: Var) -> F {
        if let Some(g) = self.guards.get(&x) {
            return g.clone();
        }
        let (y, z) = (builder.fresh(), builder.fresh());
        let g = F::and2(
            F::letter(self.b, x),
            F::exists(
                y,
                and_all(vec![
                    F::less(x, y),
                    Builder::in_letters(&self.rest, y),
                    F::not(F::exists(z, F::and2(F::less(x, z), F::less(z, y)))),
                ]),
            ),
        );
        self.guards.insert(x, g.clone());
        g
    }

    /// The abstract letter at the distinguished position `x`: the run of
    /// `b` ending at `x` and the run of `C` after it fall in blocks whose
    /// image product is that letter.
    fn letter_at(&mut self, builder: &mut Builder, letter: usize, x: Var) -> F {
        if let Some(f) = self.decoded[letter].get(&x) {
            return f.clone();
        }
        let mut cases = Vec::new();
        for &(hi, li) in &self.pairs_of[letter] {
            let h = builder.relativize(&self.suffixes[hi].formula, Scope::RunEnding(x, vec![self.b]));
            let l = builder.relativize(&self.prefixes[li].formula, Scope::RunAfter(x, self.rest.clone()));
            cases.push(F::and2(h, l));
        }
        let f = or_all(cases);
        self.decoded[letter].insert(x, f.clone());
        f
    }

    fn lift(&mut self, builder: &mut Builder, f: &F) -> F {
        if let Some((_, g)) = self.memo.get(&f.id()) {
            return g.clone();
        }
        let g = match f.node() {
            Node::True => F::tt(),
            Node::False => F::ff(),
            Node::Less(x, y) => F::less(self.var(builder, *x), self.var(builder, *y)),
            Node::Equal(x, y) => F::equal(self.var(builder, *x), self.var(builder, *y)),
            Node::Letter(l, x) => {
                let x = self.var(builder, *x);
                self.letter_at(builder, *l, x)
            }
            Node::Not(h) => F::not(self.lift(builder, h)),
            Node::And(hs) => F::and(hs.iter().map(|h| self.lift(builder, h)).collect()),
            Node::Or(hs) => F::or(hs.iter().map(|h| self.lift(builder, h)).collect()),
            Node::Exists(y, h) => {
                let y = self.var(builder, *y);
                let guard = self.distinguished(builder, y);
                F::exists(y, F::and2(guard, self.lift(builder, h)))
            }
            Node::Forall(y, h) => {
                let y = self.var(builder, *y);
                let guard = self.distinguished(builder, y);
                F::forall(y, F::implies(guard, self.lift(builder, h)))
            }
        };
        self.memo.insert(f.id(), (f.clone(), g.clone()));
        g
    }
}

/// Merges blocks with equal images into one block whose formula is the
/// disjunction. Output is sorted by image.
pub fn merge_by_image(blocks: Vec<Block>) -> Vec<Block> {
    let mut groups: BTreeMap<ElementSet, Vec<Block>> = BTreeMap::new();
    for b in blocks {
        groups.entry(b.image.clone()).or_default().push(b);
    }
    groups
        .into_iter()
        .map(|(image, mut bs)| {
            if bs.len() == 1 {
                return bs.pop().unwrap();
            }
            let mut tags: Vec<String> = bs.iter().map(|b| b.tag.clone()).collect();
            tags.dedup();
            Block {
                formula: F::or(bs.into_iter().map(|b| b.formula).collect()),
                image,
                tag: tags.join("|"),
            }
        })
        .collect()
}

/// In the tame case the generated semigroup of subsets is a pseudo-group
/// and shrinks to a group with the same union. Checked when the
/// semigroup is small enough to enumerate.
fn check_covering_group(
    ambient: &FiniteSemigroup,
    letters: &[ElementSet],
    union: &ElementSet,
) -> Result<()> {
    let Ok(c) = close(letters, |x, y| set_product(ambient, x, y), GROUP_CHECK_CAP) else {
        return Ok(());
    };
    let mut current: Vec<ElementSet> = c.elements;
    current.sort();
    loop {
        let mut shrunk = None;
        for r in &current {
            for left in [true, false] {
                let mut next: Vec<ElementSet> = current
                    .iter()
                    .map(|t| {
                        if left {
                            set_product(ambient, r, t)
                        } else {
                            set_product(ambient, t, r)
                        }
                    })
                    .collect();
                next.sort();
                next.dedup();
                if next.len() < current.len() {
                    shrunk = Some(next);
                    break;
                }
            }
            if shrunk.is_some() {
                break;
            }
        }
        match shrunk {
            Some(next) => current = next,
            None => break,
        }
    }
    let mut covered = ElementSet::empty(ambient.size());
    for t in &current {
        covered.union_with(t);
    }
    if covered != *union {
        return Err(Error::Internal(
            "tame morphism without a covering group".into(),
        ));
    }
    Ok(())
}
