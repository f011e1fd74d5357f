//! First-order logic on finite words: formulas, evaluation and the
//! rank-k equivalence oracle.

mod ef;
mod eval;
mod formula;
mod parse;

pub use ef::{
    ef_classes, ef_equivalent, ef_equivalent_by_types, ef_equivalent_on, EfTypeTable, RankTypes,
    MAX_TABLE_LENGTH, MAX_TABLE_RANK,
};
pub use eval::{eval, eval_on, Evaluator};
pub use formula::{simplify, Canonicalizer, FoFormula, Formula, Node, Var};
pub use parse::parse_formula;
