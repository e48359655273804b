use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::hyper::HypergeometricSpec;
use super::EfuncError;
use crate::arith::{factorial, Poly, Rational};

/// Σ_{j=0}^{r} p_j(n) a_{n+j} = 0 for n ≥ 0, seeded with a_0..a_{r-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub coefficients: Vec<Poly>,
    pub initial: Vec<Rational>,
}

impl Recurrence {
    pub fn new(coefficients: Vec<Poly>, initial: Vec<Rational>) -> Result<Self, EfuncError> {
        if coefficients.len() < 2 {
            return Err(EfuncError::InvalidSpec(
                "recurrence needs order at least 1".into(),
            ));
        }
        if initial.len() != coefficients.len() - 1 {
            return Err(EfuncError::InvalidSpec(format!(
                "recurrence of order {} needs {} initial values, got {}",
                coefficients.len() - 1,
                coefficients.len() - 1,
                initial.len()
            )));
        }
        Ok(Recurrence {
            coefficients,
            initial,
        })
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }
}

#[derive(Clone, Debug)]
pub enum CoefficientRule {
    Hypergeometric(HypergeometricSpec),
    Recurrence(Recurrence),
    /// Finitely many nonzero coefficients.
    Closed(Vec<Rational>),
    Derivative {
        base: Arc<ESeries>,
        order: usize,
    },
}

/// Σ a_n z^n / n! with lazily extended, append-only coefficient cache.
#[derive(Debug)]
pub struct ESeries {
    rule: CoefficientRule,
    cache: RwLock<Vec<Rational>>,
    growth_hint: Option<Rational>,
}

impl Clone for ESeries {
    fn clone(&self) -> Self {
        ESeries {
            rule: self.rule.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
            growth_hint: self.growth_hint.clone(),
        }
    }
}

impl ESeries {
    pub fn new(rule: CoefficientRule) -> Self {
        ESeries {
            rule,
            cache: RwLock::new(Vec::new()),
            growth_hint: None,
        }
    }

    pub fn hypergeometric(spec: HypergeometricSpec) -> Self {
        Self::new(CoefficientRule::Hypergeometric(spec))
    }

    pub fn closed(c: Vec<Rational>) -> Self {
        Self::new(CoefficientRule::Closed(c))
    }

    pub fn recurrence(r: Recurrence) -> Self {
        Self::new(CoefficientRule::Recurrence(r))
    }

    /// The d-th derivative, whose coefficients are a_{n+d}.
    pub fn derivative(base: &Arc<ESeries>, order: usize) -> Self {
        let s = Self::new(CoefficientRule::Derivative {
            base: base.clone(),
            order,
        });
        match &base.growth_hint {
            Some(c) if order > 0 => s.with_growth_hint(num_traits::pow(
                c.clone().max(Rational::from_integer(1.into())),
                order + 1,
            )),
            Some(c) => s.with_growth_hint(c.clone()),
            None => s,
        }
    }

    pub fn with_growth_hint(mut self, c: Rational) -> Self {
        self.growth_hint = Some(c);
        self
    }

    pub fn rule(&self) -> &CoefficientRule {
        &self.rule
    }

    pub fn growth_hint(&self) -> Option<&Rational> {
        self.growth_hint.as_ref()
    }

    /// a_0..=a_{n_max}.
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<Rational>, EfuncError> {
        {
            let c = self.cache.read().expect("cache lock");
            if c.len() > n_max {
                return Ok(c[..=n_max].to_vec());
            }
        }
        let mut c = self.cache.write().expect("cache lock");
        while c.len() <= n_max {
            let n = c.len();
            let next = self.next_coefficient(&c, n)?;
            if let Some(h) = &self.growth_hint {
                if next.abs() > num_traits::pow(h.clone(), n + 1) {
                    return Err(EfuncError::GrowthHintViolated { n });
                }
            }
            c.push(next);
        }
        Ok(c[..=n_max].to_vec())
    }

    pub fn coefficient(&self, n: usize) -> Result<Rational, EfuncError> {
        Ok(self.coefficients(n)?.pop().unwrap())
    }

    fn next_coefficient(&self, prev: &[Rational], n: usize) -> Result<Rational, EfuncError> {
        Ok(match &self.rule {
            CoefficientRule::Closed(c) => c.get(n).cloned().unwrap_or_else(Rational::zero),
            CoefficientRule::Derivative { base, order } => base.coefficient(n + order)?,
            CoefficientRule::Hypergeometric(h) => {
                let k = h.power as usize;
                if n == 0 {
                    Rational::from_integer(1.into())
                } else if !n.is_multiple_of(k) {
                    Rational::zero()
                } else {
                    &prev[n - k] * h.step_ratio(n / k - 1)
                }
            }
            CoefficientRule::Recurrence(r) => {
                let ord = r.order();
                if n < ord {
                    r.initial[n].clone()
                } else {
                    let base = n - ord;
                    let at = Rational::from_integer(BigInt::from(base));
                    let lead = r.coefficients[ord].eval(&at);
                    if lead.is_zero() {
                        return Err(EfuncError::RecurrenceSingular(n));
                    }
                    let s = (0..ord).fold(Rational::zero(), |acc, j| {
                        acc + r.coefficients[j].eval(&at) * &prev[base + j]
                    });
                    -s / lead
                }
            }
        })
    }

    /// Taylor coefficients b_n = a_n / n!, n ≤ n_max.
    pub fn taylor(&self, n_max: usize) -> Result<Vec<Rational>, EfuncError> {
        let a = self.coefficients(n_max)?;
        let mut f = BigInt::from(1);
        Ok(a.into_iter()
            .enumerate()
            .map(|(n, x)| {
                if n > 1 {
                    f *= n;
                }
                x / Rational::from_integer(f.clone())
            })
            .collect())
    }

    /// Taylor coefficients of the d-th derivative, n ≤ n_max.
    pub fn taylor_derivative(&self, d: usize, n_max: usize) -> Result<Vec<Rational>, EfuncError> {
        let a = self.coefficients(n_max + d)?;
        Ok((0..=n_max)
            .map(|n| &a[n + d] / Rational::from_integer(factorial(n as u64)))
            .collect())
    }

    /// Copy of this series with coefficient `n` replaced (fault injection).
    pub fn perturbed(&self, n: usize, delta: &Rational) -> Result<ESeries, EfuncError> {
        let mut c = self.coefficients(n.max(1) * 2 + 64)?;
        c[n] += delta;
        Ok(ESeries::closed(c))
    }
}
