//! E-function model: coefficient rules, rigorous evaluation, differential
//! systems and operators.

mod catalog;
mod eval;
mod hyper;
mod operator;
mod series;
mod system;

pub use catalog::{apery, exotic_1f1, exp, g_1f2, g_operator, hyp1f1_system, j0, Bundled};
pub use eval::{eval_ball, eval_ball_with, GrowthPolicy};
pub use hyper::HypergeometricSpec;
pub use operator::{algebraic_relation_check, DiffOperator, Reduction};
pub use series::{CoefficientRule, ESeries, Recurrence};
pub use system::DiffSystem;

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EfuncError {
    #[error("recurrence leading coefficient vanishes at index {0}")]
    RecurrenceSingular(usize),
    #[error("no growth bound available for a rigorous tail estimate")]
    NoGrowthBound,
    #[error("coefficient a_{n} exceeds the growth hint C^(n+1)")]
    GrowthHintViolated { n: usize },
    #[error("invalid series specification: {0}")]
    InvalidSpec(String),
    #[error(
        "entry ({row}, {col}) has a non-monomial denominator; the system is not desingularized"
    )]
    NotDesingularized { row: usize, col: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
