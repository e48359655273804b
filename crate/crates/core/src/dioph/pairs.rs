use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::DiophError;
use crate::arith::{factorial, Ball, Rational};
use crate::iterate::{IterTable, RankCertificate, SystemClosure};

/// p = −(M+tk)! P^[k]_{(N,0,…,0)}(1), q = (M+tk)! P^[k]_{(N−1,0,…,0)}(1),
/// normalised to q ≥ 0, with a ball for |q f_1(1) − p|.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproximantPair {
    pub k: usize,
    #[serde(serialize_with = "as_string")]
    pub p: BigInt,
    #[serde(serialize_with = "as_string")]
    pub q: BigInt,
    #[serde(skip)]
    pub defect: Ball,
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl ApproximantPair {
    pub fn new(k: usize, p: BigInt, q: BigInt, f1: &Ball) -> Self {
        let (p, q) = if q.is_negative() { (-p, -q) } else { (p, q) };
        let defect = (&f1.mul_int(&q) - &Ball::from_int(p.clone(), f1.precision())).abs();
        ApproximantPair { k, p, q, defect }
    }

    pub fn ratio(&self) -> Option<Rational> {
        (!self.q.is_zero()).then(|| Rational::new(self.p.clone(), self.q.clone()))
    }
}

/// 4·K·log2(M) + 256 bits.
pub fn defect_precision(k: usize, m_deg: usize) -> u64 {
    (4.0 * k as f64 * (m_deg.max(2) as f64).log2()).ceil() as u64 + 256
}

fn integer_at(
    table: &IterTable,
    sc: &SystemClosure,
    k: usize,
    row: usize,
) -> Result<BigInt, DiophError> {
    let v = &table.eval_bracket(k)[row];
    let scaled = v * Rational::from_integer(factorial((table.m_deg + sc.t * k) as u64));
    if scaled.is_integer() {
        Ok(scaled.to_integer())
    } else {
        Err(DiophError::IntegralityViolated { k, row })
    }
}

pub fn extract_pairs(
    cert: &RankCertificate,
    table: &IterTable,
    sc: &SystemClosure,
    f1: &Ball,
) -> Result<(ApproximantPair, ApproximantPair), DiophError> {
    let (k1, k2) = cert.pair.ok_or(DiophError::MissingPair)?;
    let theta = sc.index.theta();
    let pair = |k| -> Result<ApproximantPair, DiophError> {
        let p = -integer_at(table, sc, k, 0)?;
        let q = integer_at(table, sc, k, theta)?;
        Ok(ApproximantPair::new(k, p, q, f1))
    };
    let (a, b) = (pair(k1)?, pair(k2)?);
    if (&a.p * &b.q - &a.q * &b.p).is_zero() {
        return Err(DiophError::ZeroDeterminant { k1, k2 });
    }
    Ok((a, b))
}
