use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("field has no base field to expand over")]
    NotATower,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("work estimate {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no update of weight within the bound explains the codeword")]
    NoCandidate,
    #[error("several candidate updates explain the codeword; the encoder is not valid")]
    AmbiguousCandidate,
    #[error("every nonzero vector is a syndrome; no transmission can be saved")]
    NoSavings,
    #[error("no parity-check construction available: {0}")]
    NoConstruction(String),
    #[error("only {available} pairwise trivially intersecting subspaces available, {needed} needed")]
    InsufficientSubspaces { available: u128, needed: usize },
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err(msg: impl Into<String>) -> Error {
    Error::DimensionMismatch(msg.into())
}
