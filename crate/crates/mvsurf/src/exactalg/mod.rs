//! Exact arithmetic kernels: prime fields, univariate polynomials over a
//! prime field, small multivariate integer polynomials, and determinant
//! algorithms over all three.
//!
//! Everything here is immutable after construction and every operation is
//! pure, so values can be shared freely across worker threads.

mod fp;
mod intpoly;
mod matrix;
mod unipoly;

pub use fp::{is_prime_u64, PrimeField, DEFAULT_PRIME};
pub use intpoly::{symbolic_det, IntMultiPoly};
pub use matrix::{FieldMatrix, PolyMatrix};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactAlgError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("label lists ({row_labels}, {col_labels}) do not match dimensions ({rows}, {cols})")]
    LabelMismatch {
        rows: usize,
        cols: usize,
        row_labels: usize,
        col_labels: usize,
    },
    #[error("modulus {modulus} too small for interpolation through {points} points")]
    ModulusTooSmall { modulus: u64, points: usize },
    #[error("symbolic determinant limited to size {limit}, got {got}")]
    SymbolicSizeExceeded { limit: usize, got: usize },
    #[error("mixed moduli: {0} vs {1}")]
    MixedModuli(u64, u64),
    #[error("polynomials over different variable universes: {0} vs {1} variables")]
    VariableMismatch(usize, usize),
}
