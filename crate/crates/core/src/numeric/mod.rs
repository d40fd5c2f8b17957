//! Exact arithmetic over Q(i) and the rational quaternions.

mod gaussian;
mod matrix;
mod quaternion;

pub use gaussian::GaussianRational;
pub use matrix::{det_of_columns, is_semisimple_2x2, Echelon, Matrix, Vector};
pub use quaternion::RationalQuaternion;


pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseScalarError {
    #[error("empty scalar string")]
    Empty,
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix shapes differ")]
    ShapeMismatch,
    #[error("rows have different lengths")]
    Ragged,
}
