//! Graded Padé approximants for tuples of E-functions.
//!
//! The crate is organised bottom-up: [`arith`] holds the exact and ball
//! arithmetic, [`efunc`] models series and differential systems, [`pade`]
//! builds the approximants, [`iterate`] derives them along the system and
//! certifies ranks, [`dioph`] turns them into rational approximations and
//! [`nondeg`] checks the subspace inequality by brute force.

pub mod arith;
pub mod dioph;
pub mod efunc;
pub mod iterate;
pub mod nondeg;
pub mod pade;
pub mod pipeline;

pub use arith::{
    Ball, BigInt, Dyadic, FracFn, LaurentMatrix, LaurentPoly, MPoly, Matrix, Poly, RatFn, Rational,
};

pub use efunc::{DiffOperator, DiffSystem, ESeries, HypergeometricSpec};
pub use pade::{GradedIndex, GradedPadeSystem, PadeParams};
