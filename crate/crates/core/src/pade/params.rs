use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::index::GradedIndex;
use super::PadeError;
use crate::arith::{format_rational, Rational};

/// Degree bound M, the parameter η and the vanishing order K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadeParams {
    pub m_deg: usize,
    pub eta: Rational,
    pub k: usize,
}

impl PadeParams {
    pub fn new(idx: &GradedIndex, m_deg: usize, eta: Rational) -> Result<Self, PadeError> {
        let m = idx.m() as i64;
        let n = idx.n() as i64;
        let omega = idx.omega() as i64;
        let theta = idx.theta() as i64;
        if m_deg == 0 {
            return Err(PadeError::InvalidParams("M must be positive".into()));
        }
        if !eta.is_positive() {
            return Err(PadeError::InvalidParams(format!(
                "eta = {} must be positive",
                format_rational(&eta)
            )));
        }
        let b1 = Rational::new(BigInt::from(1), BigInt::from(3 * (n + m - 1)));
        if eta > b1 {
            return Err(PadeError::InvalidParams(format!(
                "eta = {} violates eta <= 1/(3(N+m-1)) = {}",
                format_rational(&eta),
                format_rational(&b1)
            )));
        }
        let b2 = Rational::new(BigInt::from(1), BigInt::from(omega + 1));
        if eta > b2 {
            return Err(PadeError::InvalidParams(format!(
                "eta = {} violates eta <= 1/(omega+1) = {}",
                format_rational(&eta),
                format_rational(&b2)
            )));
        }
        let kq = (Rational::from_integer(omega.into()) - &eta)
            * Rational::from_integer((m_deg as i64).into())
            / Rational::from_integer(theta.into());
        let k = kq.floor().to_integer().to_usize().expect("K fits in usize");
        if k == 0 {
            return Err(PadeError::InvalidParams("K = 0".into()));
        }
        assert!(
            theta as usize * k < omega as usize * m_deg,
            "conditions must be fewer than unknowns"
        );
        Ok(PadeParams { m_deg, eta, k })
    }
}
