use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::pairs::ApproximantPair;
use crate::arith::Dyadic;

/// Natural logs of q and of the defects for one pair.
///
/// `ratio_literal` is log|q f − p| / log q; `ratio` is log|f − p/q| / log q,
/// the quantity compared with the exponent. Rows whose defect ball contains
/// 0 carry `None` and are left out of any fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    #[serde(rename = "M")]
    pub m_deg: usize,
    pub k: usize,
    pub log_q: f64,
    pub log_defect: Option<f64>,
    pub ratio_literal: Option<f64>,
    pub ratio: Option<f64>,
    pub exact_zero: bool,
}

pub fn smallness_profile(runs: &[(usize, ApproximantPair)]) -> Vec<ProfileRow> {
    runs.iter()
        .map(|(m_deg, pair)| {
            let ln2 = std::f64::consts::LN_2;
            let log_q = if pair.q.is_zero() {
                f64::NEG_INFINITY
            } else {
                Dyadic::from_int(pair.q.clone()).log2() * ln2
            };
            let resolved = !pair.defect.contains_zero() && log_q > 0.0;
            let log_defect = resolved.then(|| pair.defect.mid().log2() * ln2);
            ProfileRow {
                m_deg: *m_deg,
                k: pair.k,
                log_q,
                log_defect,
                ratio_literal: log_defect.map(|d| d / log_q),
                ratio: log_defect.map(|d| (d - log_q) / log_q),
                exact_zero: pair.defect.is_exact() && pair.defect.contains_zero(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Ball};
    use num_bigint::BigInt;

    #[test]
    fn logs_and_ratios() {
        let f = Ball::from_rational(&rat(1, 3), 128);
        // 1000/3 − 333 = 1/3
        let pair = ApproximantPair::new(1, BigInt::from(333), BigInt::from(1000), &f);
        let row = &smallness_profile(&[(10, pair)])[0];
        assert!((row.log_q - 1000f64.ln()).abs() < 1e-9);
        assert!((row.log_defect.unwrap() - (1.0f64 / 3.0).ln()).abs() < 1e-9);
        assert!((row.ratio.unwrap() - (row.ratio_literal.unwrap() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn zero_defect_is_flagged() {
        let f = Ball::from_int(2, 64);
        let pair = ApproximantPair::new(1, BigInt::from(14), BigInt::from(7), &f);
        let row = &smallness_profile(&[(10, pair)])[0];
        assert!(row.exact_zero && row.ratio.is_none());
    }
}
