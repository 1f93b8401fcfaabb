//! Exact scalars (rationals and prime fields) and sparse exact linear algebra.

mod field;
mod fp;
mod matrix;
mod primes;
mod rational;
mod scalar;

pub use field::{Field, FieldKind};
pub use fp::Fp;
pub use matrix::{bareiss_rank, SparseMatrix};
pub use primes::{is_prime, next_prime};
pub use rational::Rational;
pub use scalar::{scalar_arith, ExactScalar, ScalarOp};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("mixed fields: {0} and {1}")]
    MixedFields(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not a prime below 2^61")]
    BadModulus(u64),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
