//! Error types shared by all modules.

use thiserror::Error;

use crate::ring::Ring;

/// Errors raised by ring-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus {0} must satisfy 2 <= n <= 2^32")]
    InvalidModulus(u64),
    #[error("ring mismatch: {left:?} vs {right:?}")]
    MismatchedRing { left: Ring, right: Ring },
    #[error("zero polynomial has no support box")]
    ZeroPolynomial,
    #[error("parse error in {input:?} at column {column}: {message}")]
    Parse {
        input: String,
        column: usize,
        message: String,
    },
    #[error("CRT combine expected {expected} components, found {found}")]
    CrtArity { expected: usize, found: usize },
}

/// Errors raised by module-level algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    /// The coefficient ring or variable count is outside the supported range.
    #[error("unsupported ring: {0}")]
    Unsupported(String),
    /// A configured resource limit was exhausted before an answer was certified.
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A documented precondition does not hold for the input.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A computed certificate failed its own verification.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
