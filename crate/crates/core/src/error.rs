use num_complex::Complex64;
use thiserror::Error;

use crate::exponent::{Exponent, ValidityBound};

/// Errors raised by the arithmetic, linear algebra and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LcError {
    #[error("non-finite coefficient {0} at exponent {1}")]
    NonFinite(Complex64, Exponent),

    #[error("division by zero")]
    DivisionByZero,

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("window exceeded: requested exponent {requested} but values are only valid to {valid_to}")]
    WindowExceeded {
        requested: Exponent,
        valid_to: ValidityBound,
    },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate vector: {0}")]
    DegenerateVector(String),

    #[error("lost dominance at step {step}: normalization has vanishing constant part")]
    LostDominance { step: usize },

    #[error(
        "dominance uncertain: last estimate {estimate}, estimated |mu2/mu1| = {ratio:.6}"
    )]
    DominanceUncertain { estimate: Complex64, ratio: f64 },

    #[error("degenerate matrix: {0}")]
    DegenerateMatrix(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = LcError> = std::result::Result<T, E>;
