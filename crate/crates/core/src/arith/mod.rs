//! Exact arithmetic: rationals, balls, polynomials and fraction-free elimination.

mod ball;
mod elim;
mod laurent;
mod matrix;
mod mpoly;
mod poly;
mod rational;

pub use ball::{Ball, Dyadic};
pub use elim::{determinant, kernel_basis, rank, rank_int, Domain, ExactField, SpanBuilder};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use matrix::Matrix;
pub use mpoly::{FracFn, MPoly};
pub use num_bigint::BigInt;
pub use poly::{Poly, RatFn};
pub use rational::{
    binomial, clear_denominators, factorial, format_rational, parse_rational, rat, Cleared,
    Rational,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero vector has no integer normalisation")]
    ZeroVector,
    #[error("Laurent polynomial with negative exponents evaluated at 0")]
    PoleAtZero,
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("division by zero")]
    DivisionByZero,
}
