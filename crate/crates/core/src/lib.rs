//! Dominant eigenpairs of matrices over the Levi-Civita field by power
//! iteration, and dominant roots of polynomials over Puiseux series through
//! their companion matrices.
//!
//! Numbers are truncated series with exact rational exponents and double
//! precision complex coefficients; see [`LcNumber`]. Every number carries a
//! validity bound: the largest exponent up to which its stored coefficients
//! are exact.

pub mod cli;
pub mod config;
pub mod eigensolver;
pub mod error;
pub mod exponent;
pub mod linalg;
pub mod number;
pub mod oracles;
pub mod text;

pub use eigensolver::{
    estimate_dominant_complex, poly_dominant_root, power_step, precondition, solve,
    weakly_converged, EigenResult, IterationTrace, NormKind, SolverConfig, StartVector,
};
pub use error::{LcError, Result};
pub use exponent::{Exponent, ValidityBound};
pub use linalg::{all_eigenvalues_at_most_finite, ComplexMatrix, Disk, LcMatrix, LcVector, Polynomial};
pub use number::{Coeff, LcNumber};
pub use text::{parse_matrix, parse_polynomial, parse_series, parse_vector};
