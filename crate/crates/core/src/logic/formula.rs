//! First-order formulas over the signature `{<, =, a(·)}`.
//!
//! Formulas are immutable DAGs with shared children, so large formulas
//! built by composition stay compact. Every traversal that may revisit a
//! shared node memoizes on node identity.

use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

/// Variable id, printed as `x<id>`.
pub type Var = u32;

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum Node<L> {
    True,
    False,
    Letter(L, Var),
    Less(Var, Var),
    Equal(Var, Var),
    Not(Formula<L>),
    And(Vec<Formula<L>>),
    Or(Vec<Formula<L>>),
    Exists(Var, Formula<L>),
    Forall(Var, Formula<L>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Formula<L>(Arc<Node<L>>);

impl<L> Clone for Formula<L> {
    fn clone(&self) -> Self {
        Formula(Arc::clone(&self.0))
    }
}

/// Formulas over character letters, the form exchanged with users.
pub type FoFormula = Formula<char>;

impl<L> Formula<L> {
    pub fn node(&self) -> &Node<L> {
        &self.0
    }

    /// Identity of the shared node, for memo tables.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as *const () as usize
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn from_node(n: Node<L>) -> Self {
        Formula(Arc::new(n))
    }

    pub fn tt() -> Self {
        Self::from_node(Node::True)
    }

    pub fn ff() -> Self {
        Self::from_node(Node::False)
    }

    pub fn letter(l: L, x: Var) -> Self {
        Self::from_node(Node::Letter(l, x))
    }

    pub fn less(x: Var, y: Var) -> Self {
        Self::from_node(Node::Less(x, y))
    }

    pub fn equal(x: Var, y: Var) -> Self {
        Self::from_node(Node::Equal(x, y))
    }

    pub fn not(f: Self) -> Self {
        Self::from_node(Node::Not(f))
    }

    pub fn and(fs: Vec<Self>) -> Self {
        Self::from_node(Node::And(fs))
    }

    pub fn or(fs: Vec<Self>) -> Self {
        Self::from_node(Node::Or(fs))
    }

    pub fn and2(a: Self, b: Self) -> Self {
        Self::and(vec![a, b])
    }

    pub fn or2(a: Self, b: Self) -> Self {
        Self::or(vec![a, b])
    }

    /// `p -> q`, encoded as `!p | q`.
    pub fn implies(p: Self, q: Self) -> Self {
        Self::or(vec![Self::not(p), q])
    }

    pub fn exists(x: Var, body: Self) -> Self {
        Self::from_node(Node::Exists(x, body))
    }

    pub fn forall(x: Var, body: Self) -> Self {
        Self::from_node(Node::Forall(x, body))
    }

    pub fn is_true(&self) -> bool {
        matches!(self.node(), Node::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self.node(), Node::False)
    }

    /// Maximal nesting depth of quantifiers.
    pub fn rank(&self) -> usize {
        fn go<L>(f: &Formula<L>, memo: &mut HashMap<usize, usize>) -> usize {
            if let Some(&r) = memo.get(&f.id()) {
                return r;
            }
            let r = match f.node() {
                Node::True
                | Node::False
                | Node::Letter(..)
                | Node::Less(..)
                | Node::Equal(..) => 0,
                Node::Not(g) => go(g, memo),
                Node::And(gs) | Node::Or(gs) => gs.iter().map(|g| go(g, memo)).max().unwrap_or(0),
                Node::Exists(_, g) | Node::Forall(_, g) => go(g, memo) + 1,
            };
            memo.insert(f.id(), r);
            r
        }
        go(self, &mut HashMap::default())
    }

    /// Number of distinct shared nodes.
    pub fn dag_size(&self) -> usize {
        fn go<L>(f: &Formula<L>, seen: &mut std::collections::HashSet<usize>) {
            if !seen.insert(f.id()) {
                return;
            }
            match f.node() {
                Node::Not(g) | Node::Exists(_, g) | Node::Forall(_, g) => go(g, seen),
                Node::And(gs) | Node::Or(gs) => gs.iter().for_each(|g| go(g, seen)),
                _ => {}
            }
        }
        let mut seen = std::collections::HashSet::new();
        go(self, &mut seen);
        seen.len()
    }

    /// Number of nodes of the formula written out as a tree, saturating.
    pub fn tree_size(&self) -> u64 {
        fn go<L>(f: &Formula<L>, memo: &mut HashMap<usize, u64>) -> u64 {
            if let Some(&r) = memo.get(&f.id()) {
                return r;
            }
            let r = 1u64.saturating_add(match f.node() {
                Node::Not(g) | Node::Exists(_, g) | Node::Forall(_, g) => go(g, memo),
                Node::And(gs) | Node::Or(gs) => gs
                    .iter()
                    .fold(0u64, |acc, g| acc.saturating_add(go(g, memo))),
                _ => 0,
            });
            memo.insert(f.id(), r);
            r
        }
        go(self, &mut HashMap::default())
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut cache = FreeVarCache::default();
        cache.get(self).to_vec()
    }
}

/// Memoized free-variable sets keyed by node identity.
#[derive(Default)]
pub(crate) struct FreeVarCache {
    memo: HashMap<usize, Arc<Vec<Var>>>,
}

impl FreeVarCache {
    pub(crate) fn get<L>(&mut self, f: &Formula<L>) -> Arc<Vec<Var>> {
        if let Some(v) = self.memo.get(&f.id()) {
            return Arc::clone(v);
        }
        let out = match f.node() {
            Node::True | Node::False => Arc::new(Vec::new()),
            Node::Letter(_, x) => Arc::new(vec![*x]),
            Node::Less(x, y) | Node::Equal(x, y) => {
                let mut v = vec![*x, *y];
                v.sort_unstable();
                v.dedup();
                Arc::new(v)
            }
            Node::Not(g) => self.get(g),
            Node::And(gs) | Node::Or(gs) => {
                let parts: Vec<Arc<Vec<Var>>> = gs.iter().map(|g| self.get(g)).collect();
                let widest = parts.iter().max_by_key(|p| p.len()).cloned().unwrap_or_default();
                if parts.iter().all(|p| p.iter().all(|v| widest.binary_search(v).is_ok())) {
                    widest
                } else {
                    let mut v: Vec<Var> = parts.iter().flat_map(|p| p.iter().copied()).collect();
                    v.sort_unstable();
                    v.dedup();
                    Arc::new(v)
                }
            }
            Node::Exists(x, g) | Node::Forall(x, g) => {
                let inner = self.get(g);
                if inner.binary_search(x).is_ok() {
                    Arc::new(inner.iter().copied().filter(|v| v != x).collect())
                } else {
                    inner
                }
            }
        };
        self.memo.insert(f.id(), Arc::clone(&out));
        out
    }
}

/// Structure-preserving rewriting with a memo table keyed by node identity.
pub(crate) struct Rewriter<'a, L, M> {
    memo: HashMap<usize, Formula<M>>,
    #[allow(clippy::type_complexity)]
    letter: Box<dyn FnMut(&L, Var) -> Formula<M> + 'a>,
    swap_order: bool,
}

impl<'a, L, M> Rewriter<'a, L, M> {
    pub(crate) fn new(letter: impl FnMut(&L, Var) -> Formula<M> + 'a, swap_order: bool) -> Self {
        Rewriter {
            memo: HashMap::default(),
            letter: Box::new(letter),
            swap_order,
        }
    }

    pub(crate) fn run(&mut self, f: &Formula<L>) -> Formula<M> {
        if let Some(g) = self.memo.get(&f.id()) {
            return g.clone();
        }
        let g = match f.node() {
            Node::True => Formula::tt(),
            Node::False => Formula::ff(),
            Node::Letter(l, x) => (self.letter)(l, *x),
            Node::Less(x, y) if self.swap_order => Formula::less(*y, *x),
            Node::Less(x, y) => Formula::less(*x, *y),
            Node::Equal(x, y) => Formula::equal(*x, *y),
            Node::Not(h) => Formula::not(self.run(h)),
            Node::And(hs) => Formula::and(hs.iter().map(|h| self.run(h)).collect()),
            Node::Or(hs) => Formula::or(hs.iter().map(|h| self.run(h)).collect()),
            Node::Exists(x, h) => Formula::exists(*x, self.run(h)),
            Node::Forall(x, h) => Formula::forall(*x, self.run(h)),
        };
        self.memo.insert(f.id(), g.clone());
        g
    }
}

impl<L: Clone> Formula<L> {
    /// Renames letters.
    pub fn map_letters<M>(&self, mut f: impl FnMut(&L) -> M) -> Formula<M> {
        Rewriter::new(move |l, x| Formula::letter(f(l), x), false).run(self)
    }

    /// Replaces every letter atom `l(x)` by a formula in `x`.
    pub fn substitute_letters<M>(&self, f: impl FnMut(&L, Var) -> Formula<M>) -> Formula<M> {
        Rewriter::new(f, false).run(self)
    }

    /// The formula with the order reversed. A word satisfies the mirror
    /// iff its reversal satisfies the original.
    pub fn mirror(&self) -> Formula<L> {
        Rewriter::new(|l: &L, x| Formula::letter(l.clone(), x), true).run(self)
    }
}

/// Hash-consing table that also renames bound variables by rank.
///
/// The binder of a quantifier node of rank `r` becomes `offset + r - 1`.
/// Binders below it have smaller ranks, so renaming never captures an
/// occurrence. Structurally equal results are returned as the same node,
/// which lets later memoized passes share work between them.
///
/// Inputs must not have free variables in the renamed range.
pub struct Canonicalizer<L> {
    offset: Var,
    table: HashMap<Key<L>, Formula<L>>,
}

#[derive(PartialEq, Eq, Hash)]
enum Key<L> {
    True,
    False,
    Letter(L, Var),
    Less(Var, Var),
    Equal(Var, Var),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Exists(Var, usize),
    Forall(Var, usize),
}

impl<L: Clone + Eq + Hash> Canonicalizer<L> {
    pub fn new(offset: Var) -> Self {
        Canonicalizer {
            offset,
            table: HashMap::default(),
        }
    }

    fn intern(&mut self, key: Key<L>, make: impl FnOnce() -> Node<L>) -> Formula<L> {
        self.table
            .entry(key)
            .or_insert_with(|| Formula::from_node(make()))
            .clone()
    }

    pub fn canonicalize(&mut self, f: &Formula<L>) -> Formula<L> {
        let mut pass = Pass {
            ranks: HashMap::default(),
            free: FreeVarCache::default(),
            memo: HashMap::default(),
            env: HashMap::default(),
        };
        pass.go(self, f)
    }
}

struct Pass<L> {
    ranks: HashMap<usize, usize>,
    free: FreeVarCache,
    memo: HashMap<(usize, Vec<Var>), Formula<L>>,
    env: HashMap<Var, Var>,
}

impl<L: Clone + Eq + Hash> Pass<L> {
    fn rank(&mut self, f: &Formula<L>) -> usize {
        if let Some(&r) = self.ranks.get(&f.id()) {
            return r;
        }
        let r = match f.node() {
            Node::True | Node::False | Node::Letter(..) | Node::Less(..) | Node::Equal(..) => 0,
            Node::Not(g) => self.rank(g),
            Node::And(gs) | Node::Or(gs) => gs.iter().map(|g| self.rank(g)).max().unwrap_or(0),
            Node::Exists(_, g) | Node::Forall(_, g) => 1 + self.rank(g),
        };
        self.ranks.insert(f.id(), r);
        r
    }

    fn var(&self, x: Var) -> Var {
        self.env.get(&x).copied().unwrap_or(x)
    }

    fn go(&mut self, c: &mut Canonicalizer<L>, f: &Formula<L>) -> Formula<L> {
        let key = (
            f.id(),
            self.free.get(f).iter().map(|&x| self.var(x)).collect::<Vec<_>>(),
        );
        if let Some(g) = self.memo.get(&key) {
            return g.clone();
        }
        let g = match f.node() {
            Node::True => c.intern(Key::True, || Node::True),
            Node::False => c.intern(Key::False, || Node::False),
            Node::Letter(l, x) => {
                let x = self.var(*x);
                c.intern(Key::Letter(l.clone(), x), || Node::Letter(l.clone(), x))
            }
            Node::Less(x, y) => {
                let (x, y) = (self.var(*x), self.var(*y));
                c.intern(Key::Less(x, y), || Node::Less(x, y))
            }
            Node::Equal(x, y) => {
                let (x, y) = (self.var(*x), self.var(*y));
                c.intern(Key::Equal(x, y), || Node::Equal(x, y))
            }
            Node::Not(h) => {
                let h = self.go(c, h);
                c.intern(Key::Not(h.id()), || Node::Not(h))
            }
            Node::And(hs) | Node::Or(hs) => {
                let hs: Vec<Formula<L>> = hs.iter().map(|h| self.go(c, h)).collect();
                let ids = hs.iter().map(Formula::id).collect();
                if matches!(f.node(), Node::And(_)) {
                    c.intern(Key::And(ids), || Node::And(hs))
                } else {
                    c.intern(Key::Or(ids), || Node::Or(hs))
                }
            }
            Node::Exists(x, h) | Node::Forall(x, h) => {
                let name = c.offset + self.rank(f) as Var - 1;
                let saved = self.env.insert(*x, name);
                let h = self.go(c, h);
                match saved {
                    Some(v) => self.env.insert(*x, v),
                    None => self.env.remove(x),
                };
                if matches!(f.node(), Node::Exists(..)) {
                    c.intern(Key::Exists(name, h.id()), || Node::Exists(name, h))
                } else {
                    c.intern(Key::Forall(name, h.id()), || Node::Forall(name, h))
                }
            }
        };
        self.memo.insert(key, g.clone());
        g
    }
}

/// Constant folding, flattening and removal of vacuous quantifiers.
/// Never increases the rank. Equivalence holds on nonempty words.
pub fn simplify<L: Clone>(f: &Formula<L>) -> Formula<L> {
    fn go<L: Clone>(
        f: &Formula<L>,
        memo: &mut HashMap<usize, Formula<L>>,
        free: &mut FreeVarCache,
    ) -> Formula<L> {
        if let Some(g) = memo.get(&f.id()) {
            return g.clone();
        }
        let g = match f.node() {
            Node::True | Node::False | Node::Letter(..) | Node::Less(..) | Node::Equal(..) => {
                f.clone()
            }
            Node::Not(h) => {
                let h = go(h, memo, free);
                match h.node() {
                    Node::True => Formula::ff(),
                    Node::False => Formula::tt(),
                    Node::Not(inner) => inner.clone(),
                    _ => Formula::not(h),
                }
            }
            Node::And(hs) | Node::Or(hs) => {
                let is_and = matches!(f.node(), Node::And(_));
                let mut parts: Vec<Formula<L>> = Vec::new();
                let mut absorbed = false;
                for h in hs {
                    let h = go(h, memo, free);
                    let (unit, zero) = if is_and {
                        (h.is_true(), h.is_false())
                    } else {
                        (h.is_false(), h.is_true())
                    };
                    if zero {
                        absorbed = true;
                        break;
                    }
                    if unit {
                        continue;
                    }
                    match (h.node(), is_and) {
                        (Node::And(inner), true) | (Node::Or(inner), false) => {
                            parts.extend(inner.iter().cloned())
                        }
                        _ => parts.push(h),
                    }
                }
                if absorbed {
                    if is_and {
                        Formula::ff()
                    } else {
                        Formula::tt()
                    }
                } else {
                    dedup_by_id(&mut parts);
                    match parts.len() {
                        0 if is_and => Formula::tt(),
                        0 => Formula::ff(),
                        1 => parts.pop().unwrap(),
                        _ if is_and => Formula::and(parts),
                        _ => Formula::or(parts),
                    }
                }
            }
            Node::Exists(x, h) | Node::Forall(x, h) => {
                let h = go(h, memo, free);
                if h.is_true() || h.is_false() || !free.get(&h).contains(x) {
                    // every word has a position, so vacuous quantifiers fold
                    h
                } else if matches!(f.node(), Node::Exists(..)) {
                    Formula::exists(*x, h)
                } else {
                    Formula::forall(*x, h)
                }
            }
        };
        memo.insert(f.id(), g.clone());
        g
    }
    go(f, &mut HashMap::default(), &mut FreeVarCache::default())
}

fn dedup_by_id<L>(parts: &mut Vec<Formula<L>>) {
    let mut seen = std::collections::HashSet::new();
    parts.retain(|p| seen.insert(p.id()));
}

const PREC_QUANT: u8 = 0;
const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_UNARY: u8 = 3;

fn implication_parts<L>(gs: &[Formula<L>]) -> Option<(&Formula<L>, &Formula<L>)> {
    match gs {
        [p, q] => match p.node() {
            Node::Not(inner) => Some((inner, q)),
            _ => None,
        },
        _ => None,
    }
}

fn write_formula<L: fmt::Display>(
    f: &Formula<L>,
    ctx: u8,
    out: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let prec = match f.node() {
        Node::Exists(..) | Node::Forall(..) => PREC_QUANT,
        Node::Or(gs) if implication_parts(gs).is_some() => PREC_QUANT,
        Node::Or(gs) if gs.len() >= 2 => PREC_OR,
        Node::And(gs) if gs.len() >= 2 => PREC_AND,
        _ => PREC_UNARY,
    };
    let wrap = prec < ctx;
    if wrap {
        out.write_str("(")?;
    }
    match f.node() {
        Node::True => out.write_str("true")?,
        Node::False => out.write_str("false")?,
        Node::Letter(l, x) => write!(out, "{l}(x{x})")?,
        Node::Less(x, y) => write!(out, "x{x}<x{y}")?,
        Node::Equal(x, y) => write!(out, "x{x}=x{y}")?,
        Node::Not(g) => {
            out.write_str("!")?;
            write_formula(g, PREC_UNARY, out)?;
        }
        Node::And(gs) | Node::Or(gs) if gs.is_empty() => {
            let unit = if matches!(f.node(), Node::And(_)) { "true" } else { "false" };
            out.write_str(unit)?;
        }
        Node::And(gs) | Node::Or(gs) if gs.len() == 1 => write_formula(&gs[0], ctx, out)?,
        Node::Or(gs) if implication_parts(gs).is_some() => {
            let (p, q) = implication_parts(gs).unwrap();
            write_formula(p, PREC_OR, out)?;
            out.write_str(" -> ")?;
            write_formula(q, PREC_QUANT, out)?;
        }
        Node::And(gs) | Node::Or(gs) => {
            let (sep, child) = if matches!(f.node(), Node::And(_)) {
                (" & ", PREC_UNARY)
            } else {
                (" | ", PREC_AND)
            };
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_formula(g, child, out)?;
            }
        }
        Node::Exists(x, g) | Node::Forall(x, g) => {
            let q = if matches!(f.node(), Node::Exists(..)) { 'E' } else { 'A' };
            write!(out, "{q} x{x}. ")?;
            write_formula(g, PREC_QUANT, out)?;
        }
    }
    if wrap {
        out.write_str(")")?;
    }
    Ok(())
}

impl<L: fmt::Display> fmt::Display for Formula<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, PREC_QUANT, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_counts_nesting() {
        let f: FoFormula = Formula::exists(
            1,
            Formula::forall(2, Formula::implies(Formula::less(1, 2), Formula::letter('a', 2))),
        );
        assert_eq!(f.rank(), 2);
        assert_eq!(Formula::<char>::less(1, 2).rank(), 0);
        let g = Formula::or2(f.clone(), Formula::exists(3, f.clone()));
        assert_eq!(g.rank(), 3);
    }

    #[test]
    fn shared_nodes_counted_once() {
        let mut f: FoFormula = Formula::letter('a', 1);
        for _ in 0..70 {
            f = Formula::and2(f.clone(), f);
        }
        assert_eq!(f.dag_size(), 71);
        assert_eq!(f.tree_size(), u64::MAX);
    }

    #[test]
    fn display_uses_surface_syntax() {
        let f: FoFormula = Formula::exists(
            1,
            Formula::and2(
                Formula::letter('a', 1),
                Formula::forall(2, Formula::implies(Formula::less(2, 1), Formula::letter('b', 2))),
            ),
        );
        assert_eq!(f.to_string(), "E x1. a(x1) & (A x2. x2<x1 -> b(x2))");
    }

    #[test]
    fn mirror_swaps_order() {
        let f: FoFormula = Formula::less(1, 2);
        assert_eq!(f.mirror().to_string(), "x2<x1");
    }

    #[test]
    fn simplify_folds_constants() {
        let f: FoFormula = Formula::exists(
            1,
            Formula::and(vec![Formula::tt(), Formula::or2(Formula::ff(), Formula::tt())]),
        );
        assert!(simplify(&f).is_true());
        let g: FoFormula = Formula::not(Formula::not(Formula::letter('a', 1)));
        assert_eq!(simplify(&g).to_string(), "a(x1)");
    }

    #[test]
    fn free_variables() {
        let f: FoFormula = Formula::exists(1, Formula::less(1, 2));
        assert_eq!(f.free_vars(), vec![2]);
    }

    #[test]
    fn canonical_names_merge_alpha_equivalent_subformulas() {
        // E x7. a(x7) and E x9. a(x9) become one node
        let a = |x| Formula::exists(x, Formula::letter('a', x));
        let f: FoFormula = Formula::and2(a(7), Formula::not(a(9)));
        let g = Canonicalizer::new(1).canonicalize(&f);
        assert_eq!(g.to_string(), "(E x1. a(x1)) & !(E x1. a(x1))");
        assert_eq!(g.dag_size(), 4);
    }

    #[test]
    fn canonical_names_avoid_capture() {
        // the free variable keeps its name, inner binders get lower ranks
        let f: FoFormula = Formula::exists(
            5,
            Formula::and2(Formula::less(1, 5), Formula::forall(6, Formula::less(5, 6))),
        );
        let g = Canonicalizer::new(1).canonicalize(&f);
        assert_eq!(g.free_vars(), vec![1]);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.to_string(), "E x2. x1<x2 & (A x1. x2<x1)");
    }
}
