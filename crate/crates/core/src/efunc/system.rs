use num_traits::Zero;

use super::series::ESeries;
use super::EfuncError;
use crate::arith::{LaurentMatrix, LaurentPoly, RatFn, Rational};

/// f_l' = S_{l,0} + Σ_j S_{l,j} f_j with Laurent polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffSystem {
    m: usize,
    s: LaurentMatrix,
    labels: Vec<String>,
}

impl DiffSystem {
    pub fn new(s: LaurentMatrix, labels: Vec<String>) -> Result<Self, EfuncError> {
        let m = s.rows();
        if m == 0 || s.cols() != m + 1 {
            return Err(EfuncError::InvalidSpec(format!(
                "system matrix must be m x (m+1), got {} x {}",
                s.rows(),
                s.cols()
            )));
        }
        if labels.len() != m {
            return Err(EfuncError::InvalidSpec(format!(
                "expected {m} labels, got {}",
                labels.len()
            )));
        }
        Ok(DiffSystem { m, s, labels })
    }

    /// Accepts rational-function entries; each must reduce to a Laurent
    /// polynomial (denominator a monomial).
    pub fn from_rational(
        entries: Vec<Vec<RatFn>>,
        labels: Vec<String>,
    ) -> Result<Self, EfuncError> {
        let rows = entries
            .iter()
            .enumerate()
            .map(|(row, r)| {
                r.iter()
                    .enumerate()
                    .map(|(col, f)| {
                        f.to_laurent()
                            .ok_or(EfuncError::NotDesingularized { row, col })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(LaurentMatrix::from_rows(rows), labels)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// S_{l,j}, l in 1..=m, j in 0..=m (1-based l as in the system).
    pub fn entry(&self, l: usize, j: usize) -> &LaurentPoly {
        self.s.get(l - 1, j)
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.s
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coefficients of z^e, e ≤ order, of f_l' − S_{l,0} − Σ_j S_{l,j} f_j.
    pub fn residual(
        &self,
        series: &[ESeries],
        order: usize,
    ) -> Result<Vec<LaurentPoly>, EfuncError> {
        if series.len() != self.m {
            return Err(EfuncError::InvalidSpec(format!(
                "expected {} series, got {}",
                self.m,
                series.len()
            )));
        }
        let depth = order + 1 + self.max_negative_exponent();
        let taylor: Vec<Vec<Rational>> = series
            .iter()
            .map(|f| f.taylor(depth + 1))
            .collect::<Result<_, _>>()?;
        let mut out = Vec::with_capacity(self.m);
        for l in 1..=self.m {
            let mut terms: Vec<(i64, Rational)> = Vec::new();
            for e in 0..=order as i64 {
                let n = e as usize + 1;
                terms.push((e, &taylor[l - 1][n] * Rational::from_integer(n.into())));
            }
            terms.extend(
                self.entry(l, 0)
                    .terms()
                    .filter(|(e, _)| *e <= order as i64)
                    .map(|(e, c)| (e, -c)),
            );
            for j in 1..=self.m {
                for (se, c) in self.entry(l, j).terms() {
                    for (n, b) in taylor[j - 1].iter().enumerate() {
                        let e = se + n as i64;
                        if e > order as i64 {
                            break;
                        }
                        if !b.is_zero() {
                            terms.push((e, -(c * b)));
                        }
                    }
                }
            }
            out.push(LaurentPoly::from_terms(&terms));
        }
        Ok(out)
    }

    fn max_negative_exponent(&self) -> usize {
        self.s
            .entries()
            .iter()
            .map(|p| (-p.low()).max(0) as usize)
            .max()
            .unwrap_or(0)
    }
}
