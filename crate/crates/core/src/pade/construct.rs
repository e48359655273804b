use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::index::GradedIndex;
use super::params::PadeParams;
use super::PadeError;
use crate::arith::{
    binomial, clear_denominators, factorial, kernel_basis, LaurentPoly, Matrix, Rational,
};
use crate::efunc::ESeries;

/// P_κ = Σ_{ν<M} π_{κ,ν} z^ν/ν! for κ ∈ Ω with integer π of content 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPadeSystem {
    pub index: GradedIndex,
    pub params: PadeParams,
    /// π[position of κ][ν]
    pub pi: Vec<Vec<BigInt>>,
    pub max_abs_pi: BigInt,
}

impl GradedPadeSystem {
    pub fn from_pi(index: GradedIndex, params: PadeParams, pi: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(pi.len(), index.omega());
        assert!(pi.iter().all(|r| r.len() == params.m_deg));
        let max_abs_pi = pi
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default();
        GradedPadeSystem {
            index,
            params,
            pi,
            max_abs_pi,
        }
    }

    pub fn poly(&self, pos: usize) -> LaurentPoly {
        let c = self.pi[pos]
            .iter()
            .enumerate()
            .map(|(nu, x)| Rational::new(x.clone(), factorial(nu as u64)))
            .collect();
        LaurentPoly::new(0, c)
    }

    pub fn polys(&self) -> Vec<LaurentPoly> {
        (0..self.index.omega()).map(|i| self.poly(i)).collect()
    }

    /// Same system with π_{κ,ν} changed by `delta` (fault injection).
    pub fn perturbed(&self, pos: usize, nu: usize, delta: i64) -> Self {
        let mut pi = self.pi.clone();
        pi[pos][nu] += delta;
        Self::from_pi(self.index.clone(), self.params.clone(), pi)
    }
}

fn series_coefficients(
    series: &[ESeries],
    idx: &GradedIndex,
    n: usize,
) -> Result<Vec<Vec<Rational>>, PadeError> {
    if series.len() != idx.m() {
        return Err(PadeError::SeriesCount {
            expected: idx.m(),
            got: series.len(),
        });
    }
    Ok(series
        .iter()
        .map(|f| f.coefficients(n))
        .collect::<Result<_, _>>()?)
}

/// s! times the coefficient of z^s in Σ_j P_{κ−e_j} f_j, as a linear form in
/// the lower-grade unknowns (column (pos−θ)·M + ν).
fn lower_form(
    idx: &GradedIndex,
    m_deg: usize,
    a: &[Vec<Rational>],
    kappa: usize,
    s: usize,
    mut f: impl FnMut(usize, Rational),
) {
    for (j, aj) in a.iter().enumerate() {
        let Some(p) = idx.shifted(kappa, &[(j, -1)]) else {
            continue;
        };
        let base = (p - idx.theta()) * m_deg;
        for nu in 0..m_deg.min(s + 1) {
            let c = &aj[s - nu];
            if !c.is_zero() {
                f(
                    base + nu,
                    Rational::from_integer(binomial(s as u64, nu as u64)) * c,
                );
            }
        }
    }
}

/// One nonzero solution of the vanishing conditions.
///
/// The top-grade unknowns π_{κ,s} (κ ∈ Θ, s < M) are fixed by the first M
/// conditions, so only the rows s ∈ [M, K) are solved for, in the
/// lower-grade unknowns. With top-grade columns ordered first this yields
/// the same first reduced-echelon kernel vector as the full θK × ωM system.
pub fn construct(
    series: &[ESeries],
    idx: &GradedIndex,
    params: &PadeParams,
) -> Result<GradedPadeSystem, PadeError> {
    let m_deg = params.m_deg;
    let k = params.k;
    let theta = idx.theta();
    let lower = idx.omega() - theta;
    let a = series_coefficients(series, idx, k)?;
    let ncols = lower * m_deg;

    let mut rows = Vec::new();
    for kappa in 0..theta {
        for s in m_deg..k {
            let mut row = vec![Rational::zero(); ncols];
            lower_form(idx, m_deg, &a, kappa, s, |c, v| row[c] += v);
            rows.push(row);
        }
    }
    let x = if rows.is_empty() {
        let mut v = vec![Rational::zero(); ncols];
        v[0] = Rational::from_integer(1.into());
        v
    } else {
        kernel_basis(&Matrix::from_rows(rows))
            .into_iter()
            .next()
            .expect("kernel is nonempty when omega*M > theta*K")
    };

    let mut full = vec![Rational::zero(); idx.omega() * m_deg];
    full[theta * m_deg..].clone_from_slice(&x);
    for kappa in 0..theta {
        for s in 0..m_deg {
            let mut acc = Rational::zero();
            lower_form(idx, m_deg, &a, kappa, s, |c, v| acc += v * &x[c]);
            full[kappa * m_deg + s] = -acc;
        }
    }
    let cleared = clear_denominators(&full).expect("construction never yields the zero system");
    let pi = cleared.ints.chunks(m_deg).map(|c| c.to_vec()).collect();
    Ok(GradedPadeSystem::from_pi(idx.clone(), params.clone(), pi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum VanishingOrder {
    Exact(usize),
    AtLeast(usize),
}

impl VanishingOrder {
    pub fn value(&self) -> usize {
        match *self {
            VanishingOrder::Exact(v) | VanishingOrder::AtLeast(v) => v,
        }
    }
}

/// ord_0 of P_κ + Σ_j P_{κ−e_j} f_j for each κ ∈ Θ, checked up to K + M + 8.
pub fn verify_vanishing(
    g: &GradedPadeSystem,
    series: &[ESeries],
) -> Result<Vec<VanishingOrder>, PadeError> {
    let idx = &g.index;
    let m_deg = g.params.m_deg;
    let check = g.params.k + m_deg + 8;
    let a = series_coefficients(series, idx, check)?;
    let lower: Vec<BigInt> = g.pi[idx.theta()..].iter().flatten().cloned().collect();
    let lower: Vec<Rational> = lower.into_iter().map(Rational::from_integer).collect();
    Ok((0..idx.theta())
        .map(|kappa| {
            for s in 0..check {
                let mut acc = if s < m_deg {
                    Rational::from_integer(g.pi[kappa][s].clone())
                } else {
                    Rational::zero()
                };
                lower_form(idx, m_deg, &a, kappa, s, |c, v| acc += v * &lower[c]);
                if !acc.is_zero() {
                    return VanishingOrder::Exact(s);
                }
            }
            VanishingOrder::AtLeast(check)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub max_abs_pi: String,
    pub log2_max: f64,
    /// ln(max|π|) / M
    pub log_ratio: f64,
}

pub fn coefficient_growth_report(g: &GradedPadeSystem) -> GrowthReport {
    let log2 = if g.max_abs_pi.is_zero() {
        f64::NEG_INFINITY
    } else {
        crate::arith::Dyadic::from_int(g.max_abs_pi.clone()).log2()
    };
    GrowthReport {
        max_abs_pi: g.max_abs_pi.to_string(),
        log2_max: log2,
        log_ratio: log2 * std::f64::consts::LN_2 / g.params.m_deg as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::efunc;

    #[test]
    fn exp_small_case() {
        let e = efunc::exp();
        let idx = GradedIndex::new(1, 1);
        let p = PadeParams::new(&idx, 4, rat(1, 6)).unwrap();
        let g = construct(&e.series, &idx, &p).unwrap();
        let orders = verify_vanishing(&g, &e.series).unwrap();
        assert!(orders[0].value() >= 7);
        assert!(g.pi.iter().flatten().any(|x| !x.is_zero()));
        let bumped = g.perturbed(1, 0, 1);
        assert!(verify_vanishing(&bumped, &e.series).unwrap()[0].value() < 7);
    }

    #[test]
    fn trivial_system_has_order_zero() {
        let e = efunc::exp();
        let idx = GradedIndex::new(1, 1);
        let p = PadeParams::new(&idx, 3, rat(1, 6)).unwrap();
        let mut pi = vec![vec![BigInt::zero(); 3]; 2];
        pi[0][0] = BigInt::from(1);
        let g = GradedPadeSystem::from_pi(idx, p, pi);
        assert_eq!(
            verify_vanishing(&g, &e.series).unwrap(),
            vec![VanishingOrder::Exact(0)]
        );
    }

    #[test]
    fn growth_report_is_finite() {
        let e = efunc::exp();
        let idx = GradedIndex::new(1, 1);
        let p = PadeParams::new(&idx, 10, rat(1, 8)).unwrap();
        let r = coefficient_growth_report(&construct(&e.series, &idx, &p).unwrap());
        assert!(r.log_ratio.is_finite() && r.log_ratio > 0.0);
    }
}
