//! Exact linear algebra: dense matrices over F_l and rational
//! Fourier–Motzkin projection.

mod fm;
mod matrix;
mod redundancy;

pub use fm::{Constraint, LinExpr, LinearSystem, Rational, Relation};
pub use matrix::{is_prime, span_basis, MatrixFl, Prime, Rref};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("integer overflow during elimination")]
    Overflow,
}
