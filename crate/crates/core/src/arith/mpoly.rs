use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are keyed by exponent vectors; `BTreeMap` order is lexicographic,
/// so the last key is the lex-leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable x_i (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(e, Rational::one())
    }

    pub fn term(exps: Vec<u32>, c: Rational) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Bits in the largest numerator or denominator, a size proxy for pivoting.
    pub fn height_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes polynomials for every variable.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars);
        let nv = subs.first().map_or(self.nvars, |s| s.nvars);
        let mut acc = MPoly::zero(nv);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(nv, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                for _ in 0..k {
                    t = &t * s;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    fn lead(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if d.terms.len() == 1 {
            let (de, dc) = d.lead().unwrap();
            let inv = dc.recip();
            let mut q = MPoly::zero(self.nvars);
            for (e, c) in &self.terms {
                if e.iter().zip(de).any(|(a, b)| a < b) {
                    return None;
                }
                q.terms
                    .insert(e.iter().zip(de).map(|(a, b)| a - b).collect(), c * &inv);
            }
            return Some(q);
        }
        let (de, dc) = d.lead().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = r.lead().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let te: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let tc = rc / &dc;
            for (e, c) in &d.terms {
                let ne: Vec<u32> = e.iter().zip(&te).map(|(a, b)| a + b).collect();
                r.add_term(ne, -(c * &tc));
            }
            q.add_term(te, tc);
        }
        Some(q)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars.max(o.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        r
    }
}

/// Element of Q(x_1..x_k) kept as an unreduced fraction.
#[derive(Clone, Debug)]
pub struct FracFn {
    pub num: MPoly,
    pub den: MPoly,
}

impl FracFn {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "fraction with zero denominator");
        FracFn { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        FracFn {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MPoly::constant(nvars, c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }
}

impl PartialEq for FracFn {
    fn eq(&self, o: &FracFn) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Add for &FracFn {
    type Output = FracFn;
    fn add(self, o: &FracFn) -> FracFn {
        if self.den == o.den {
            return FracFn::new(&self.num + &o.num, self.den.clone());
        }
        FracFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &FracFn {
    type Output = FracFn;
    fn sub(self, o: &FracFn) -> FracFn {
        self + &FracFn::new(-&o.num, o.den.clone())
    }
}

impl Mul for &FracFn {
    type Output = FracFn;
    fn mul(self, o: &FracFn) -> FracFn {
        FracFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}
