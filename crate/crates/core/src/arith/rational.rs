use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ArithError;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p` (optional sign on `p`, `q > 0` after normalisation).
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::MalformedRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer normalisation of a rational vector.
///
/// `ints[i] = v[i] * lcm / content`: `lcm` clears the denominators and
/// `content` is the gcd divided out afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cleared {
    pub ints: Vec<BigInt>,
    pub lcm: BigInt,
    pub content: BigInt,
}

impl Cleared {
    /// Factor `s` with `ints = s * v`.
    pub fn scaling(&self) -> Rational {
        Rational::new(self.lcm.clone(), self.content.clone())
    }
}

pub fn clear_denominators(v: &[Rational]) -> Result<Cleared, ArithError> {
    if v.iter().all(|q| q.is_zero()) {
        return Err(ArithError::ZeroVector);
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let content = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints = scaled.into_iter().map(|x| x / &content).collect();
    Ok(Cleared {
        ints,
        lcm,
        content: content.abs(),
    })
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// C(n, k) for integers, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
