use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{Ball, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentMethod {
    ConstructedApproximants,
    ContinuedFraction,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentSample {
    #[serde(serialize_with = "as_string")]
    pub p: BigInt,
    #[serde(serialize_with = "as_string")]
    pub q: BigInt,
    #[serde(skip)]
    pub defect: Ball,
    /// −log|x − p/q| / log q; `None` for q = 1 or an exact hit.
    pub mu: Option<f64>,
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentEstimate {
    pub method: ExponentMethod,
    #[serde(serialize_with = "all_as_string")]
    pub partial_quotients: Vec<BigInt>,
    pub samples: Vec<ExponentSample>,
    /// The expansion terminated: the input is an exact rational.
    pub rational: bool,
    /// Fewer quotients than requested could be certified.
    pub truncated: bool,
    /// |x − p_n/q_n| < 1/(q_n q_{n+1}) certified for every consecutive pair.
    pub convergent_law: bool,
    pub max_mu: Option<f64>,
    pub tail_median: Option<f64>,
}

fn all_as_string<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// Up to `depth` partial quotients a_0, a_1, … of the value, each certified
/// by a ball floor. An exact ball is expanded exactly.
pub fn continued_fraction_exponent(value: &Ball, depth: usize) -> ExponentEstimate {
    let (quotients, rational, truncated) = if value.is_exact() {
        let (q, r) = exact_quotients(&value.mid().to_rational(), depth);
        (q, r, false)
    } else {
        ball_quotients(value, depth)
    };
    let convergents = convergents(&quotients);
    let samples: Vec<ExponentSample> = convergents
        .iter()
        .map(|(p, q)| {
            let defect = (&value.mul_int(q) - &Ball::from_int(p.clone(), value.precision()))
                .abs()
                .div(&Ball::from_int(q.clone(), value.precision()))
                .expect("q is positive");
            let mu = (q > &BigInt::one() && !defect.contains_zero())
                .then(|| -defect.mid().log2() / crate::arith::Dyadic::from_int(q.clone()).log2());
            ExponentSample {
                p: p.clone(),
                q: q.clone(),
                defect,
                mu,
            }
        })
        .collect();
    let convergent_law = samples.windows(2).all(|w| {
        let bound = Rational::new(BigInt::one(), &w[0].q * &w[1].q);
        w[0].defect.upper().to_rational() < bound
    });
    let mus: Vec<f64> = samples.iter().filter_map(|s| s.mu).collect();
    let max_mu = mus
        .iter()
        .copied()
        .fold(None, |a: Option<f64>, x| Some(a.map_or(x, |a| a.max(x))));
    let tail = &mus[mus.len() / 2..];
    let tail_median = median(tail);
    ExponentEstimate {
        method: ExponentMethod::ContinuedFraction,
        partial_quotients: quotients,
        samples,
        rational,
        truncated,
        convergent_law,
        max_mu,
        tail_median,
    }
}

pub(crate) fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

fn exact_quotients(x: &Rational, depth: usize) -> (Vec<BigInt>, bool) {
    let mut out = Vec::new();
    let mut x = x.clone();
    while out.len() < depth {
        let a = x.floor().to_integer();
        let frac = &x - Rational::from_integer(a.clone());
        out.push(a);
        if frac.is_zero() {
            return (out, true);
        }
        x = frac.recip();
    }
    (out, false)
}

fn ball_quotients(value: &Ball, depth: usize) -> (Vec<BigInt>, bool, bool) {
    let mut out = Vec::new();
    let mut x = value.clone();
    while out.len() < depth {
        let Some(a) = x.floor() else {
            return (out, false, true);
        };
        let frac = &x - &Ball::from_int(a.clone(), x.precision());
        out.push(a);
        match frac.recip() {
            Ok(r) => x = r,
            Err(_) => {
                let short = out.len() < depth;
                return (out, false, short);
            }
        }
    }
    (out, false, false)
}

fn convergents(a: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    a.iter()
        .map(|ai| {
            let p = ai * &p0 + &p1;
            let q = ai * &q0 + &q1;
            (p1, q1) = (p0.clone(), q0.clone());
            (p0, q0) = (p.clone(), q.clone());
            debug_assert!(q.is_positive());
            (p, q)
        })
        .collect()
}
