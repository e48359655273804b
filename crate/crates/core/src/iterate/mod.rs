//! Derivation of the approximants along the differential system.

mod closure;
mod local;
mod rank;
mod table;

pub use closure::{build_a, SystemClosure};
pub use local::{local_solution_at_one, remainder_derivative_check, z_vector, DefectReport};
pub use rank::{
    default_kmax, rank_certificate, rank_certificate_auto, rank_certificate_from_table,
    RankCertificate,
};
pub use table::{iterate_bracket, IterTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IterateError {
    #[error("pi_(k={k}, kappa={kappa}, nu={nu}) is not an integer")]
    IntegralityViolated { k: usize, kappa: usize, nu: i64 },
    #[error("system has {system} components but the index was built for m = {index}")]
    DimensionMismatch { system: usize, index: usize },
}
