use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::series::ESeries;
use super::EfuncError;
use crate::arith::{binomial, factorial, kernel_basis, LaurentPoly, Matrix, Poly, RatFn, Rational};

/// L = Σ_{j=0}^{r} q_j(z) (d/dz)^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    coeffs: Vec<RatFn>,
}

impl DiffOperator {
    pub fn new(coeffs: Vec<RatFn>) -> Result<Self, EfuncError> {
        match coeffs.last() {
            Some(q) if !q.is_zero() => Ok(DiffOperator { coeffs }),
            _ => Err(EfuncError::InvalidSpec(
                "leading operator coefficient must be nonzero".into(),
            )),
        }
    }

    pub fn from_laurent(coeffs: &[LaurentPoly]) -> Result<Self, EfuncError> {
        Self::new(coeffs.iter().map(RatFn::from_laurent).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    /// Polynomial coefficients of D·L where D is the lcm of the denominators.
    pub fn cleared(&self) -> Vec<Poly> {
        let d = self.coeffs.iter().fold(Poly::one(), |acc, q| {
            let g = Poly::gcd(&acc, q.den());
            (&acc * q.den()).div_rem(&g).0
        });
        self.coeffs
            .iter()
            .map(|q| {
                let (k, r) = d.div_rem(q.den());
                debug_assert!(r.is_zero());
                q.num() * &k
            })
            .collect()
    }

    /// L* y = Σ_j (−1)^j (q_j y)^{(j)}, expanded as Σ_i q̃_i y^{(i)} with
    /// q̃_i = Σ_{j≥i} (−1)^j C(j,i) q_j^{(j−i)}.
    pub fn adjoint(&self) -> DiffOperator {
        let r = self.order();
        let mut derivs: Vec<Vec<RatFn>> = Vec::with_capacity(r + 1);
        for q in &self.coeffs {
            let mut v = vec![q.clone()];
            for _ in 0..r {
                let next = v.last().unwrap().derivative();
                v.push(next);
            }
            derivs.push(v);
        }
        let coeffs = (0..=r)
            .map(|i| {
                (i..=r).fold(RatFn::zero(), |acc, j| {
                    let c = Rational::from_integer(binomial(j as u64, i as u64));
                    let c = if j % 2 == 1 { -c } else { c };
                    &acc + &(&RatFn::constant(c) * &derivs[j][j - i])
                })
            })
            .collect();
        DiffOperator { coeffs }
    }

    /// Taylor coefficients z^0..z^order of D·L(f), D clearing denominators.
    pub fn residual(&self, f: &ESeries, order: usize) -> Result<Vec<Rational>, EfuncError> {
        let p = self.cleared();
        let r = self.order();
        let a = f.coefficients(order + r)?;
        let inv_fact: Vec<Rational> = (0..=order)
            .map(|n| Rational::new(BigInt::one(), factorial(n as u64)))
            .collect();
        Ok((0..=order)
            .map(|e| {
                let mut acc = Rational::zero();
                for (j, pj) in p.iter().enumerate() {
                    for (s, c) in pj.coeffs().iter().enumerate() {
                        if s > e || c.is_zero() {
                            continue;
                        }
                        acc += c * &a[e - s + j] * &inv_fact[e - s];
                    }
                }
                acc
            })
            .collect())
    }

    /// Searches a Laurent polynomial R with exponents in `window` and
    /// L* R = 0, then integrates R·L into an order r−1 operator.
    pub fn inhomogeneous_reduction(&self, window: (i64, i64)) -> Option<Reduction> {
        let (lo, hi) = window;
        if hi < lo {
            return None;
        }
        let adj = self.adjoint();
        let p = adj.cleared();
        let r = self.order();
        let width = (hi - lo + 1) as usize;
        // column e−lo holds the Laurent expansion of Σ_i p_i(z) (z^e)^{(i)}
        let cols: Vec<LaurentPoly> = (lo..=hi)
            .map(|e| {
                (0..=r).fold(LaurentPoly::zero(), |acc, i| {
                    let ff = (0..i as i64).fold(Rational::one(), |f, t| {
                        f * Rational::from_integer((e - t).into())
                    });
                    if ff.is_zero() {
                        return acc;
                    }
                    acc + p[i].to_laurent().shift(e - i as i64).scale(&ff)
                })
            })
            .collect();
        let emin = cols
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.low())
            .min()
            .unwrap_or(0);
        let emax = cols.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
        let rows: Vec<Vec<Rational>> = (emin..=emax)
            .map(|e| cols.iter().map(|c| c.coeff(e)).collect())
            .collect();
        let basis = if rows.is_empty() {
            (0..width)
                .map(|j| {
                    (0..width)
                        .map(|i| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        } else {
            kernel_basis(&Matrix::from_rows(rows))
        };
        let v = basis.into_iter().next()?;
        let mult = LaurentPoly::new(lo, v);
        let rf = RatFn::from_laurent(&mult);
        let mut ps = vec![RatFn::zero(); r];
        ps[r - 1] = &rf * &self.coeffs[r];
        for j in (1..r).rev() {
            ps[j - 1] = &(&rf * &self.coeffs[j]) - &ps[j].derivative();
        }
        let closes = ps[0].derivative() == &rf * &self.coeffs[0];
        assert!(closes, "adjoint solution failed to integrate");
        Some(Reduction {
            multiplier: mult,
            p: ps,
        })
    }
}

/// R·L(y) = (Σ_{j<r} p_j y^{(j)})'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub multiplier: LaurentPoly,
    pub p: Vec<RatFn>,
}

impl Reduction {
    /// The constant Σ p_j f^{(j)} for a solution f, checked on the Laurent
    /// expansion at 0 up to z^order; `None` if the combination is not constant.
    pub fn constant_for(&self, f: &ESeries, order: usize) -> Result<Option<Rational>, EfuncError> {
        let depth = order
            + 2
            + self
                .p
                .iter()
                .map(|q| q.den().degree().unwrap())
                .max()
                .unwrap_or(0);
        let mut total: Vec<(i64, Rational)> = Vec::new();
        for (j, q) in self.p.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let v = q.den().valuation();
            let unit = Poly::new(q.den().coeffs()[v..].to_vec());
            let inv = series_inverse(&unit, depth);
            let num = q.num().coeffs();
            let fj = f.taylor_derivative(j, depth)?;
            // num * inv * fj, then shift by −v
            let prod = mul_trunc(&mul_trunc(num, &inv, depth), &fj, depth);
            for (n, c) in prod.into_iter().enumerate() {
                if !c.is_zero() {
                    total.push((n as i64 - v as i64, c));
                }
            }
        }
        let s = LaurentPoly::from_terms(&total).truncate(order as i64 + 1);
        if s.terms().all(|(e, _)| e == 0) {
            Ok(Some(s.coeff(0)))
        } else {
            Ok(None)
        }
    }
}

fn series_inverse(u: &Poly, n: usize) -> Vec<Rational> {
    let u0 = u.coeff(0);
    assert!(!u0.is_zero());
    let inv0 = u0.recip();
    let mut out = vec![Rational::zero(); n + 1];
    out[0] = inv0.clone();
    for k in 1..=n {
        let s = (1..=k.min(u.coeffs().len().saturating_sub(1)))
            .fold(Rational::zero(), |acc, i| acc + u.coeff(i) * &out[k - i]);
        out[k] = -s * &inv0;
    }
    out
}

pub(crate) fn mul_trunc(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// g² − g′²/4 + 9z²(4g − g″)²/4 = 1 up to O(z^{order+1}).
pub fn algebraic_relation_check(g: &ESeries, order: usize) -> Result<bool, EfuncError> {
    let g0 = g.taylor_derivative(0, order)?;
    let g1 = g.taylor_derivative(1, order)?;
    let g2 = g.taylor_derivative(2, order)?;
    let quarter = Rational::new(1.into(), 4.into());
    let four = Rational::from_integer(4.into());
    let h: Vec<Rational> = g0.iter().zip(&g2).map(|(a, b)| &four * a - b).collect();
    let hh = mul_trunc(&h, &h, order);
    let mut lhs: Vec<Rational> = mul_trunc(&g0, &g0, order)
        .into_iter()
        .zip(mul_trunc(&g1, &g1, order))
        .map(|(a, b)| a - b * &quarter)
        .collect();
    let nine_quarters = Rational::new(9.into(), 4.into());
    for n in 2..=order {
        lhs[n] += &hh[n - 2] * &nine_quarters;
    }
    lhs[0] -= Rational::one();
    Ok(lhs.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::efunc::HypergeometricSpec;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            &terms
                .iter()
                .map(|&(e, c)| (e, rat(c, 1)))
                .collect::<Vec<_>>(),
        )
    }

    fn exp_series() -> ESeries {
        ESeries::hypergeometric(HypergeometricSpec::new(vec![], vec![], rat(1, 1), 1).unwrap())
    }

    #[test]
    fn adjoint_examples() {
        let d = DiffOperator::from_laurent(&[LaurentPoly::zero(), lp(&[(0, 1)])]).unwrap();
        assert_eq!(
            d.adjoint(),
            DiffOperator::from_laurent(&[LaurentPoly::zero(), lp(&[(0, -1)])]).unwrap()
        );
        let zd = DiffOperator::from_laurent(&[LaurentPoly::zero(), lp(&[(1, 1)])]).unwrap();
        assert_eq!(
            zd.adjoint(),
            DiffOperator::from_laurent(&[lp(&[(0, -1)]), lp(&[(1, -1)])]).unwrap()
        );
    }

    #[test]
    fn exp_residual_and_fault() {
        let op = DiffOperator::from_laurent(&[lp(&[(0, -1)]), lp(&[(0, 1)])]).unwrap();
        assert!(op
            .residual(&exp_series(), 30)
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        let bad = exp_series().perturbed(7, &rat(1, 1)).unwrap();
        let r = op.residual(&bad, 30).unwrap();
        let first = r.iter().position(|x| !x.is_zero());
        assert_eq!(first, Some(6));
    }

    #[test]
    fn reductions() {
        let d = DiffOperator::from_laurent(&[LaurentPoly::zero(), lp(&[(0, 1)])]).unwrap();
        let red = d.inhomogeneous_reduction((-2, 2)).unwrap();
        assert_eq!(red.p, vec![RatFn::from_laurent(&red.multiplier)]);

        let op = DiffOperator::from_laurent(&[LaurentPoly::zero(), lp(&[(0, -1)]), lp(&[(0, 1)])])
            .unwrap();
        let red = op.inhomogeneous_reduction((0, 3)).unwrap();
        assert_eq!(red.multiplier, lp(&[(0, 1)]));
        assert_eq!(
            red.p,
            vec![RatFn::constant(rat(-1, 1)), RatFn::constant(rat(1, 1))]
        );
        assert_eq!(
            red.constant_for(&exp_series(), 20).unwrap(),
            Some(rat(0, 1))
        );
        assert!(op.inhomogeneous_reduction((1, 3)).is_none());
    }

    #[test]
    fn relation_rejects_exp() {
        assert!(!algebraic_relation_check(&exp_series(), 10).unwrap());
    }
}
