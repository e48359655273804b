//! Midpoint–radius real balls with dyadic endpoints.
//!
//! Midpoints are rounded to the ball's precision and the rounding error is
//! added to the radius; radii are kept to 64 bits and always rounded up.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::ArithError;

const RADIUS_BITS: u64 = 64;

/// man · 2^exp
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Self::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        Dyadic {
            man: man >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// 2^e
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: e,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.man << self.exp as usize)
        } else {
            Rational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Exact if `q` has a power-of-two denominator.
    pub fn from_rational_exact(q: &Rational) -> Option<Self> {
        let d = q.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz).is_one() {
            Some(Self::new(q.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    /// Truncation of `q` towards zero to about `bits` significant bits, with
    /// an error bound `2^err_exp` (strict).
    fn from_rational_trunc(q: &Rational, bits: u64) -> (Self, Dyadic) {
        if let Some(d) = Self::from_rational_exact(q) {
            return (d, Dyadic::zero());
        }
        let n = q.numer().abs();
        let d = q.denom();
        let s = bits as i64 - (n.bits() as i64 - d.bits() as i64) + 1;
        let t = if s >= 0 {
            (&n << s as usize) / d
        } else {
            n / (d << (-s) as usize)
        };
        let t = if q.is_negative() { -t } else { t };
        (Self::new(t, -s), Dyadic::pow2(-s))
    }

    /// Smallest dyadic of at most `bits` bits that is ≥ q (q ≥ 0).
    pub fn from_rational_up(q: &Rational, bits: u64) -> Self {
        assert!(
            !q.is_negative(),
            "upward rounding expects a nonnegative value"
        );
        let (d, e) = Self::from_rational_trunc(q, bits);
        if e.is_zero() {
            d.round_up(bits)
        } else {
            (&d + &e).round_up(bits)
        }
    }

    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Rounds a nonnegative value up to at most `bits` bits.
    pub fn round_up(&self, bits: u64) -> Self {
        let b = self.man.bits();
        if b <= bits {
            return self.clone();
        }
        let shift = b - bits;
        Self::new(
            (&self.man >> shift as usize) + 1u32,
            self.exp + shift as i64,
        )
    }

    /// Truncates towards zero to `bits` bits; returns the strict error bound.
    fn truncate(&self, bits: u64) -> (Self, Dyadic) {
        let b = self.man.bits();
        if b <= bits {
            return (self.clone(), Dyadic::zero());
        }
        let shift = b - bits;
        let m = self.man.abs() >> shift as usize;
        let m = if self.man.is_negative() { -m } else { m };
        (
            Self::new(m, self.exp + shift as i64),
            Dyadic::pow2(self.exp + shift as i64),
        )
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            self.man.div_floor(&(BigInt::one() << (-self.exp) as usize))
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// log2 |x| as a float, −∞ for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = self.man.bits();
        let shift = b.saturating_sub(60);
        let top = (self.man.abs() >> shift as usize)
            .to_u64_digits()
            .1
            .first()
            .copied()
            .unwrap_or(0) as f64;
        top.log2() + (shift as i64 + self.exp) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let s = if self.is_negative() { -1.0 } else { 1.0 };
        s * self.log2().exp2()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let (sa, sb) = (self.man.sign(), o.man.sign());
        if sa != sb || sa == Sign::NoSign {
            return sa.cmp(&sb);
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &o.man << (o.exp - e) as usize;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        Dyadic::new(
            (&self.man << (self.exp - e) as usize) + (&o.man << (o.exp - e) as usize),
            e,
        )
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, o: &Dyadic) -> Dyadic {
        self + &(-o)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &o.man, self.exp + o.exp)
    }
}

/// A real number known to lie in [mid − rad, mid + rad].
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
    prec: u64,
}

impl Ball {
    fn build(mid: Dyadic, rad: Dyadic, prec: u64) -> Self {
        let (mid, e) = mid.truncate(prec);
        let rad = if e.is_zero() { rad } else { &rad + &e };
        Ball {
            mid,
            rad: rad.round_up(RADIUS_BITS),
            prec,
        }
    }

    pub fn exact(d: Dyadic, prec: u64) -> Self {
        Self::build(d, Dyadic::zero(), prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u64) -> Self {
        Self::exact(Dyadic::from_int(n), prec)
    }

    pub fn zero(prec: u64) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    pub fn from_rational(q: &Rational, prec: u64) -> Self {
        let (mid, e) = Dyadic::from_rational_trunc(q, prec + 2);
        Self::build(mid, e, prec)
    }

    pub fn with_radius(mid: Dyadic, rad: Dyadic, prec: u64) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        Self::build(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn precision(&self) -> u64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Widens the radius by `r` (r ≥ 0).
    pub fn add_error(&self, r: &Dyadic) -> Self {
        Ball {
            mid: self.mid.clone(),
            rad: (&self.rad + r).round_up(RADIUS_BITS),
            prec: self.prec,
        }
    }

    pub fn upper(&self) -> Dyadic {
        &self.mid + &self.rad
    }

    pub fn lower(&self) -> Dyadic {
        &self.mid - &self.rad
    }

    /// Upper bound for |x|.
    pub fn upper_abs(&self) -> Dyadic {
        &self.mid.abs() + &self.rad
    }

    /// Lower bound for |x| (zero if the ball straddles 0).
    pub fn lower_abs(&self) -> Dyadic {
        let l = &self.mid.abs() - &self.rad;
        if l.is_negative() {
            Dyadic::zero()
        } else {
            l
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        (q - self.mid.to_rational()).abs() <= self.rad.to_rational()
    }

    /// Certified floor: `Some(n)` when every point of the ball has floor n.
    pub fn floor(&self) -> Option<BigInt> {
        let lo = self.lower().floor();
        let hi = self.upper().floor();
        if lo == hi {
            Some(lo)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        if self.contains_zero() {
            let u = self.upper_abs();
            let half = &u * &Dyadic::pow2(-1);
            Ball {
                mid: half.clone(),
                rad: half.round_up(RADIUS_BITS),
                prec: self.prec,
            }
        } else {
            Ball {
                mid: self.mid.abs(),
                rad: self.rad.clone(),
                prec: self.prec,
            }
        }
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Ball::from_int(1, self.prec).div(self)
    }

    pub fn div(&self, o: &Ball) -> Result<Self, ArithError> {
        if o.contains_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let prec = self.prec.max(o.prec);
        let q = self.mid.to_rational() / o.mid.to_rational();
        // |a/b - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
        let err = (self.rad.to_rational() + q.abs() * o.rad.to_rational())
            / (o.mid.abs().to_rational() - o.rad.to_rational());
        let (mid, e) = Dyadic::from_rational_trunc(&q, prec + 2);
        let rad = &Dyadic::from_rational_up(&err, RADIUS_BITS) + &e;
        Ok(Self::build(mid, rad, prec))
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        self * &Ball::from_rational(q, self.prec)
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        let d = Dyadic::from_int(n.clone());
        Self::build(&self.mid * &d, &self.rad * &d.abs(), self.prec)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Ball::from_int(1, self.prec), |acc, _| &acc * self)
    }

    /// log2 of the radius (−∞ for exact balls).
    pub fn rad_log2(&self) -> f64 {
        self.rad.log2()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn mid_decimal(&self, digits: usize) -> String {
        let q = self.mid.to_rational();
        let scale = num_traits::pow(BigInt::from(10), digits);
        let t = (q.abs() * Rational::from_integer(scale.clone()))
            .round()
            .to_integer();
        let (ip, fp) = t.div_rem(&scale);
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- 2^{:.1}]", self.mid_decimal(30), self.rad_log2())
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, o: &Ball) -> Ball {
        Ball::build(
            &self.mid + &o.mid,
            &self.rad + &o.rad,
            self.prec.max(o.prec),
        )
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, o: &Ball) -> Ball {
        Ball::build(
            &self.mid - &o.mid,
            &self.rad + &o.rad,
            self.prec.max(o.prec),
        )
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, o: &Ball) -> Ball {
        let rad =
            &(&(&self.mid.abs() * &o.rad) + &(&o.mid.abs() * &self.rad)) + &(&self.rad * &o.rad);
        Ball::build(&self.mid * &o.mid, rad, self.prec.max(o.prec))
    }
}
