use thiserror::Error;

/// Errors raised by the library. Semi-decision outcomes are never errors;
/// they are reported through [`crate::verdict::Verdict`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("model is not a lawful group: {0}")]
    Model(String),

    #[error("degenerate gadget: {0}")]
    Degenerate(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn rank(expected: usize, found: usize) -> Self {
        Error::RankMismatch { expected, found }
    }
}
