use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hyper::HypergeometricSpec;
use super::series::{CoefficientRule, ESeries};
use super::EfuncError;
use crate::arith::{factorial, Ball, Dyadic, Rational};

/// How the truncation tail of a series without a certified structure is bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthPolicy {
    /// Only certified bounds: term-ratio certificates for hypergeometric
    /// series, otherwise the series' growth hint.
    Certified,
    /// Fall back to C = 2·⌈max_{n ≤ sample} |a_n|^{1/(n+1)}⌉ when no hint is
    /// present, checked against the next cached terms. Not a proof.
    Empirical { sample: usize },
}

/// Rigorous enclosure of Σ a_n x^n/n!.
pub fn eval_ball(e: &ESeries, x: &Rational, prec: u64) -> Result<Ball, EfuncError> {
    eval_ball_with(e, x, prec, GrowthPolicy::Certified)
}

pub fn eval_ball_with(
    e: &ESeries,
    x: &Rational,
    prec: u64,
    policy: GrowthPolicy,
) -> Result<Ball, EfuncError> {
    let (base, d) = resolve(e);
    match base.rule() {
        CoefficientRule::Closed(c) => {
            let n = c.len().saturating_sub(d);
            let a = e.coefficients(n.max(1))?;
            Ok(Ball::from_rational(&partial_sum(&a[..n.max(1)], x), prec))
        }
        CoefficientRule::Hypergeometric(h) => hyper_eval(base, h, d, x, prec),
        _ => {
            let c = match (e.growth_hint(), policy) {
                (Some(c), _) => c.clone(),
                (None, GrowthPolicy::Empirical { sample }) => empirical_growth(e, sample)?,
                (None, GrowthPolicy::Certified) => return Err(EfuncError::NoGrowthBound),
            };
            growth_eval(e, &c, x, prec, policy != GrowthPolicy::Certified)
        }
    }
}

fn resolve(e: &ESeries) -> (&ESeries, usize) {
    match e.rule() {
        CoefficientRule::Derivative { base, order } => {
            let (b, d) = resolve(base);
            (b, d + order)
        }
        _ => (e, 0),
    }
}

fn partial_sum(a: &[Rational], x: &Rational) -> Rational {
    let mut sum = Rational::zero();
    let mut pw = Rational::one();
    for (n, an) in a.iter().enumerate() {
        if n > 0 {
            pw = pw * x / Rational::from_integer(BigInt::from(n));
        }
        if !an.is_zero() {
            sum += an * &pw;
        }
    }
    sum
}

fn target(prec: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (prec + 8) as usize)
}

/// Term-ratio certificate: for i ≥ I every |t_{i+1}/t_i| is bounded by a
/// product of factors (α i + β)/(γ i + δ) that decrease in i, evaluated at I.
fn ratio_bound(h: &HypergeometricSpec, d: usize, x: &Rational, i: usize) -> Option<Rational> {
    let k = h.power as usize;
    let it = Rational::from_integer(BigInt::from(i));
    let mut rho = h.scale.abs() * num_traits::pow(x.abs(), k);
    let upper = h.abs_upper();
    for (j, b) in h.lower.iter().enumerate() {
        let den = &it - b.abs();
        if !den.is_positive() {
            return None;
        }
        let num = match upper.get(j) {
            Some(a) => &it + a,
            None => Rational::one(),
        };
        rho = rho * num / den;
    }
    rho /= &it + Rational::one();
    for s in 1..=k {
        let num = Rational::from_integer(BigInt::from(k * i + s));
        let den = &num - Rational::from_integer(BigInt::from(d));
        if !den.is_positive() {
            return None;
        }
        rho = rho * num / den;
    }
    Some(rho)
}

fn hyper_eval(
    base: &ESeries,
    h: &HypergeometricSpec,
    d: usize,
    x: &Rational,
    prec: u64,
) -> Result<Ball, EfuncError> {
    if x.is_zero() {
        return Ok(Ball::from_rational(&base.coefficient(d)?, prec));
    }
    let k = h.power as usize;
    let goal = target(prec);
    let stop = h.terminates_after();
    let mut sum = Rational::zero();
    let mut i = d.div_ceil(k);
    let tail = loop {
        if stop.is_some_and(|t| i > t) {
            break Rational::zero();
        }
        let n = k * i;
        let term = base.coefficient(n)? * num_traits::pow(x.clone(), n - d)
            / Rational::from_integer(factorial((n - d) as u64));
        if let Some(rho) = ratio_bound(h, d, x, i) {
            if rho < Rational::one() {
                let bound = term.abs() / (Rational::one() - rho);
                if bound <= goal {
                    break bound;
                }
            }
        }
        sum += term;
        i += 1;
    };
    Ok(Ball::from_rational(&sum, prec).add_error(&Dyadic::from_rational_up(&tail, 64)))
}

fn empirical_growth(e: &ESeries, sample: usize) -> Result<Rational, EfuncError> {
    let a = e.coefficients(sample)?;
    let mut c = 1.0f64;
    for (n, an) in a.iter().enumerate() {
        if an.is_zero() {
            continue;
        }
        let l = (an.numer().abs().bits() as f64 - an.denom().bits() as f64 + 1.0).max(0.0);
        c = c.max((l / (n as f64 + 1.0)).exp2());
    }
    Ok(Rational::from_integer(BigInt::from(
        (c.ceil() as u64).max(1) * 2,
    )))
}

/// Tail Σ_{n>N} C^{n+1}|x|^n/n! ≤ C (C|x|)^{N+1}/(N+1)! / (1 − C|x|/(N+2)).
fn growth_eval(
    e: &ESeries,
    c: &Rational,
    x: &Rational,
    prec: u64,
    check: bool,
) -> Result<Ball, EfuncError> {
    let goal = target(prec);
    let cx = c * x.abs();
    let mut n = 0usize;
    let mut pw = c * &cx; // C (C|x|)^{n+1}/(n+1)!
    let tail = loop {
        let ratio = &cx / Rational::from_integer(BigInt::from(n + 2));
        if ratio < Rational::one() {
            let bound = &pw / (Rational::one() - ratio);
            if bound <= goal {
                break bound;
            }
        }
        n += 1;
        pw = pw * &cx / Rational::from_integer(BigInt::from(n + 1));
    };
    let a = e.coefficients(n + 8)?;
    if check {
        // the next cached terms must respect the assumed growth
        for (m, am) in a.iter().enumerate().skip(n + 1) {
            if am.abs() > num_traits::pow(c.clone(), m + 1) {
                return Err(EfuncError::NoGrowthBound);
            }
        }
    }
    let sum = partial_sum(&a[..=n], x);
    Ok(Ball::from_rational(&sum, prec).add_error(&Dyadic::from_rational_up(&tail, 64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::arith::Poly;
    use crate::efunc::Recurrence;

    fn exp_series() -> ESeries {
        ESeries::hypergeometric(HypergeometricSpec::new(vec![], vec![], rat(1, 1), 1).unwrap())
    }

    #[test]
    fn exp_at_one() {
        let b = eval_ball(&exp_series(), &rat(1, 1), 128).unwrap();
        assert!((b.to_f64() - std::f64::consts::E).abs() < 1e-15);
        assert!(b.rad_log2() < -120.0);
        // e lies between two rational bounds from the alternating-free series
        let lo = (0..30).fold(rat(0, 1), |acc, n| {
            acc + Rational::new(1.into(), factorial(n))
        });
        assert!(b.lower().to_rational() > lo - rat(1, 1_000_000_000));
    }

    #[test]
    fn polynomial_series_exact() {
        let p = ESeries::closed(vec![rat(1, 1), rat(-2, 3), rat(5, 1)]);
        let x = rat(3, 7);
        let exact = rat(1, 1) - rat(2, 3) * &x + rat(5, 2) * &x * &x;
        assert!(eval_ball(&p, &x, 64).unwrap().contains_rational(&exact));
    }

    #[test]
    fn recurrence_needs_growth() {
        let r = Recurrence::new(
            vec![Poly::constant(rat(-1, 1)), Poly::constant(rat(1, 1))],
            vec![rat(1, 1)],
        )
        .unwrap();
        let s = ESeries::recurrence(r);
        assert_eq!(
            eval_ball(&s, &rat(1, 1), 64),
            Err(EfuncError::NoGrowthBound)
        );
        let b = eval_ball_with(&s, &rat(1, 1), 64, GrowthPolicy::Empirical { sample: 20 }).unwrap();
        assert!((b.to_f64() - std::f64::consts::E).abs() < 1e-15);
        let s = s.with_growth_hint(rat(1, 1));
        let b = eval_ball(&s, &rat(1, 2), 64).unwrap();
        assert!((b.to_f64() - 0.5f64.exp()).abs() < 1e-15);
    }
}
