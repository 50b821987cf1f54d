use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed expression text. Positions are 1-based.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// A symbol name that does not match `[A-Za-z][A-Za-z0-9_]*` or is reserved.
    #[error("invalid symbol {0:?}")]
    InvalidSymbol(String),

    /// A computation exceeded one of its configured caps.
    #[error("{what} exceeded the limit of {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
