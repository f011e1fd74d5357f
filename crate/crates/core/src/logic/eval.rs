//! Evaluation of formulas on finite words.
//!
//! Results are memoized on the node and the positions of its free
//! variables only. Formulas produced by relativization nest many
//! quantifiers whose bodies mention few free variables, so this keeps
//! evaluation polynomial where naive recursion would be `n^rank`.

use rustc_hash::FxHashMap as HashMap;

use crate::error::{Error, Result};
use crate::logic::formula::{FoFormula, Formula, FreeVarCache, Node, Var};

/// Evaluator for one formula on many words. The free-variable cache is
/// kept between words; the memo table is reset per word.
pub struct Evaluator<L> {
    formula: Formula<L>,
    word: Vec<L>,
    free: FreeVarCache,
    memo: HashMap<(usize, Key), bool>,
    env: HashMap<Var, u32>,
}

/// Positions of the free variables of a node. Up to 8 positions below
/// 255 are packed into one word.
#[derive(PartialEq, Eq, Hash)]
enum Key {
    Packed(u64),
    Wide(Vec<u32>),
}

fn pack(positions: &[u32]) -> Key {
    if positions.len() > 8 || positions.iter().any(|&p| p >= 255) {
        return Key::Wide(positions.to_vec());
    }
    let mut key = 0u64;
    for (i, &p) in positions.iter().enumerate() {
        key |= ((p + 1) as u64) << (8 * i);
    }
    Key::Packed(key)
}

impl<L: PartialEq + Clone> Evaluator<L> {
    pub fn new(formula: &Formula<L>) -> Self {
        Evaluator {
            formula: formula.clone(),
            word: Vec::new(),
            free: FreeVarCache::default(),
            memo: HashMap::default(),
            env: HashMap::default(),
        }
    }

    /// Truth value of the formula on `word`.
    pub fn eval_word(&mut self, word: &[L]) -> Result<bool> {
        self.eval_word_with(word, &[])
    }

    /// Truth value with the given variables bound to positions.
    pub fn eval_word_with(&mut self, word: &[L], assignment: &[(Var, u32)]) -> Result<bool> {
        if word.is_empty() {
            return Err(Error::MalformedFormula(
                "formulas are evaluated on nonempty words".into(),
            ));
        }
        if let Some(&(x, p)) = assignment.iter().find(|&&(_, p)| p as usize >= word.len()) {
            return Err(Error::MalformedFormula(format!(
                "x{x} is bound to position {p} outside the word"
            )));
        }
        self.word.clear();
        self.word.extend_from_slice(word);
        self.memo.clear();
        self.env.clear();
        self.env.extend(assignment.iter().copied());
        let f = self.formula.clone();
        self.eval(&f)
    }

    fn lookup(&self, x: Var) -> Result<u32> {
        self.env
            .get(&x)
            .copied()
            .ok_or_else(|| Error::MalformedFormula(format!("unbound variable x{x}")))
    }

    fn eval(&mut self, f: &Formula<L>) -> Result<bool> {
        let vars = self.free.get(f);
        let mut positions = [0u32; 8];
        let key = if vars.len() <= 8 {
            for (slot, &x) in positions.iter_mut().zip(vars.iter()) {
                *slot = self.lookup(x)?;
            }
            pack(&positions[..vars.len()])
        } else {
            let ps: Vec<u32> = vars.iter().map(|&x| self.lookup(x)).collect::<Result<_>>()?;
            pack(&ps)
        };
        let key = (f.id(), key);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = match f.node() {
            Node::True => true,
            Node::False => false,
            Node::Letter(l, x) => self.word[self.lookup(*x)? as usize] == *l,
            Node::Less(x, y) => self.lookup(*x)? < self.lookup(*y)?,
            Node::Equal(x, y) => self.lookup(*x)? == self.lookup(*y)?,
            Node::Not(g) => !self.eval(g)?,
            Node::And(gs) => {
                let mut all = true;
                for g in gs {
                    if !self.eval(g)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            Node::Or(gs) => {
                let mut any = false;
                for g in gs {
                    if self.eval(g)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            Node::Exists(x, g) | Node::Forall(x, g) => {
                let want = matches!(f.node(), Node::Exists(..));
                let saved = self.env.get(x).copied();
                let mut result = !want;
                for p in 0..self.word.len() as u32 {
                    self.env.insert(*x, p);
                    if self.eval(g)? == want {
                        result = want;
                        break;
                    }
                }
                match saved {
                    Some(p) => self.env.insert(*x, p),
                    None => self.env.remove(x),
                };
                result
            }
        };
        self.memo.insert(key, v);
        Ok(v)
    }
}

/// Evaluates a sentence on a word of characters.
pub fn eval(f: &FoFormula, word: &str) -> Result<bool> {
    let w: Vec<char> = word.chars().collect();
    eval_on(f, &w)
}

/// Evaluates a sentence on a word over any letter type.
pub fn eval_on<L: PartialEq + Clone>(f: &Formula<L>, word: &[L]) -> Result<bool> {
    Evaluator::new(f).eval_word(word)
}
