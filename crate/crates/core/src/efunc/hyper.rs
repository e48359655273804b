use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::EfuncError;
use crate::arith::{factorial, Rational};

/// pFq[a; b; c z^k] with rational parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergeometricSpec {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub scale: Rational,
    pub power: u32,
}

pub(crate) fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_positive()
}

impl HypergeometricSpec {
    pub fn new(
        upper: Vec<Rational>,
        lower: Vec<Rational>,
        scale: Rational,
        power: u32,
    ) -> Result<Self, EfuncError> {
        let s = HypergeometricSpec {
            upper,
            lower,
            scale,
            power,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), EfuncError> {
        if self.upper.len() > self.lower.len() {
            return Err(EfuncError::InvalidSpec(format!(
                "p = {} exceeds q = {}; the series is not entire of E-type",
                self.upper.len(),
                self.lower.len()
            )));
        }
        if let Some(b) = self.lower.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(EfuncError::InvalidSpec(format!(
                "lower parameter {b} is a nonpositive integer"
            )));
        }
        if self.power == 0 {
            return Err(EfuncError::InvalidSpec(
                "argument power must be positive".into(),
            ));
        }
        Ok(())
    }

    /// a_n in the Σ a_n z^n/n! normalisation, straight from the product formula.
    pub fn coefficient(&self, n: usize) -> Rational {
        let k = self.power as usize;
        if !n.is_multiple_of(k) {
            return Rational::zero();
        }
        let i = n / k;
        let poch = |a: &Rational| {
            (0..i).fold(Rational::one(), |acc, t| {
                acc * (a + Rational::from_integer(t.into()))
            })
        };
        let num: Rational = self.upper.iter().map(poch).product();
        let den: Rational = self.lower.iter().map(poch).product();
        let fact = Rational::new(factorial(n as u64), factorial(i as u64));
        fact * num / den * num_traits::pow(self.scale.clone(), i)
    }

    /// a_{k(i+1)} / a_{ki}.
    pub(crate) fn step_ratio(&self, i: usize) -> Rational {
        let k = self.power as u64;
        let it = Rational::from_integer(BigInt::from(i));
        let mut r = self.scale.clone() / Rational::from_integer(BigInt::from(i + 1));
        for a in &self.upper {
            r *= a + &it;
        }
        for b in &self.lower {
            r /= b + &it;
        }
        let base = k * i as u64;
        for s in 1..=k {
            r *= Rational::from_integer(BigInt::from(base + s));
        }
        r
    }

    /// Index beyond which all coefficients vanish (an upper parameter is a
    /// nonpositive integer −t, so terms with i > t are zero).
    pub(crate) fn terminates_after(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|a| is_nonpositive_integer(a))
            .map(|a| (-a.to_integer()).try_into().unwrap_or(usize::MAX))
            .min()
    }

    pub(crate) fn abs_upper(&self) -> Vec<Rational> {
        self.upper.iter().map(|a| a.abs()).collect()
    }
}
