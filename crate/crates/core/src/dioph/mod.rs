//! Rational approximations to f_1(1) built from the derived approximants.

mod cfrac;
mod measure;
mod pairs;
mod profile;

pub use cfrac::{continued_fraction_exponent, ExponentEstimate, ExponentMethod, ExponentSample};
pub use measure::{measure_external, MeasureBound};
pub use pairs::{defect_precision, extract_pairs, ApproximantPair};
pub use profile::{smallness_profile, ProfileRow};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiophError {
    #[error("(M+tk)! P^[k](1) is not an integer at k={k}, row {row}")]
    IntegralityViolated { k: usize, row: usize },
    #[error("rank certificate carries no (k1, k2) pair")]
    MissingPair,
    #[error("det[[p1,q1],[p2,q2]] vanishes for k1={k1}, k2={k2}")]
    ZeroDeterminant { k1: usize, k2: usize },
}
