use thiserror::Error;

/// Errors raised by constructors, loaders and the decision procedures.
///
/// Scientific outcomes (a poset failing the Macaulay conditions, a search
/// finding no order) are never errors; they are reported through
/// [`crate::Verdict`] and [`crate::SearchOutcome`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("operation `{op}` is undefined here: {reason}")]
    Precondition { op: &'static str, reason: String },
    #[error("invalid injection: {0}")]
    InvalidInjection(String),
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("quotient is infinite: variable `{0}` has no pure power among the generators")]
    InfiniteQuotient(String),
    #[error("level {level} has {size} elements, above the level cap of {cap}; raise --level-cap")]
    LevelTooLarge { level: usize, size: usize, cap: usize },
    #[error("{0}")]
    NotMacaulay(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(op: &'static str, reason: impl Into<String>) -> Error {
    Error::Precondition {
        op,
        reason: reason.into(),
    }
}
