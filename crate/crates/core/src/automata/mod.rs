//! Regular-language frontend: regexes, NFAs, DFAs and the semigroups
//! recognizing them.

mod dfa;
mod nfa;
mod regex;

pub use dfa::{complement, minimal_dfa, syntactic_semigroup, Dfa, DEFAULT_DFA_CAP};
pub use nfa::{
    pair_to_morphism, pair_to_morphism_capped, regex_to_nfa, transition_semigroup,
    transition_semigroup_capped, words_up_to, Nfa, NfaJson, Relation, TransitionSemigroup,
};
pub use regex::{parse_regex, Regex};

use crate::error::Result;

/// Parses a regex and builds its Glushkov automaton. The flag reports
/// whether the expression denoted the empty word, which is dropped.
pub fn nfa_from_regex(text: &str) -> Result<(Nfa, bool)> {
    let r = parse_regex(text)?;
    Ok((regex_to_nfa(&r), r.nullable()))
}
