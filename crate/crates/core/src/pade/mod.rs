//! Graded Padé approximants: index sets, parameters and the kernel solve.

mod construct;
mod index;
mod params;

pub use construct::{
    coefficient_growth_report, construct, verify_vanishing, GradedPadeSystem, GrowthReport,
    VanishingOrder,
};
pub use index::GradedIndex;
pub use params::PadeParams;

use thiserror::Error;

use crate::efunc::EfuncError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadeError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("expected {expected} series, got {got}")]
    SeriesCount { expected: usize, got: usize },
    #[error("series coefficients unavailable: {0}")]
    InsufficientCoefficients(#[from] EfuncError),
}
