use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Modular inverse requested for a non-unit.
    #[error("{x} is not invertible modulo {m}")]
    NotInvertible { x: String, m: String },
    /// A brute-force routine would exceed its work budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
