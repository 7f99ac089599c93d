//! Error types shared across the crate.

use thiserror::Error;

/// A parse failure with the byte offset where it happened and what was
/// expected there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(i64),

    #[error("fiber multiplicity must be positive, got {0} in pair #{1}")]
    NonpositiveMultiplicity(i64, usize),

    #[error("group order must be positive, got {0}")]
    InvalidGroupOrder(i64),

    #[error("root-of-unity modulus must be positive, got {0}")]
    InvalidModulus(i64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("denominator must be positive")]
    InvalidDenominator,

    #[error("value is not a rational integer: {0}")]
    NotAnInteger(String),

    #[error("work limit exceeded: estimated {estimate} units, budget {budget}")]
    WorkLimitExceeded { estimate: u128, budget: u64 },

    #[error("integrality violation in count pipeline: {0}")]
    IntegralityViolation(String),

    #[error("negative count in pipeline: {0}")]
    NegativeCount(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
