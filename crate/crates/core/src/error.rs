//! Error types shared across the crate.

use thiserror::Error;

/// All recoverable failures surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text does not conform to the variety grammar.
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    /// A parsed variety violates a structural requirement.
    #[error("invalid variety: {0}")]
    Validation(String),

    /// An operation was called outside its contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// No generic sample point could be found within the attempt budget.
    #[error("genericity failure: {0}")]
    Genericity(String),

    /// A configured size guard was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
