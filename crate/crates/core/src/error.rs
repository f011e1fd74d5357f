use thiserror::Error;

use crate::semigroup::Element;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(Element, Element, Element),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid omega-semigroup: {0}")]
    InvalidOmegaSemigroup(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },

    #[error("malformed formula: {0}")]
    MalformedFormula(String),

    #[error("languages are not FO-separable (witness elements {0} and {1})")]
    NotSeparable(Element, Element),

    #[error("both input languages are empty")]
    EmptyInputs,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn resource(what: impl Into<String>, limit: usize) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::parse(e.column(), e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
