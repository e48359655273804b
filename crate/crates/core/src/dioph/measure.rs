use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::pairs::ApproximantPair;
use crate::arith::{Ball, Dyadic};

/// Lower bound for |f − p/q| from a pair (p_j, q_j) non-collinear with (p, q):
/// the integer q p_j − p q_j is nonzero, so
/// |q_j| |q f − p| ≥ 1 − q |q_j f − p_j|.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureBound {
    /// Index (0 or 1) of the pair used.
    pub pair: usize,
    #[serde(skip)]
    pub lower: Dyadic,
    pub lower_log2: f64,
}

/// `None` when both pairs are collinear with (p, q) or the bound is vacuous.
pub fn measure_external(
    p: &BigInt,
    q: &BigInt,
    pairs: &[ApproximantPair; 2],
) -> Option<MeasureBound> {
    assert!(q.is_positive(), "q must be positive");
    pairs
        .iter()
        .enumerate()
        .filter(|(_, a)| !(q * &a.p - p * &a.q).is_zero() && !a.q.is_zero())
        .filter_map(|(i, a)| {
            let prec = a.defect.precision();
            let num = &Ball::from_int(1, prec) - &a.defect.mul_int(q);
            let den = Ball::from_int(a.q.abs() * q, prec);
            let lower = num.div(&den).ok()?.lower();
            (!lower.is_negative() && !lower.is_zero()).then(|| MeasureBound {
                pair: i,
                lower_log2: lower.log2(),
                lower,
            })
        })
        .max_by(|a, b| a.lower.cmp(&b.lower))
}
