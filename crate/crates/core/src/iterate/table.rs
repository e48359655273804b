use num_bigint::BigInt;

use super::closure::SystemClosure;
use super::IterateError;
use crate::arith::{factorial, LaurentMatrix, LaurentPoly, Rational};
use crate::pade::GradedPadeSystem;

/// Rows k = 1..=k_max of P^{[k]} (bracket) and P_{k,·} (plain).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterTable {
    pub bracket: Vec<Vec<LaurentPoly>>,
    pub plain: Vec<Vec<LaurentPoly>>,
    pub m_deg: usize,
    pub t: usize,
}

/// (d/dz + ᵗA) P, i.e. κ ↦ P_κ' + Σ_λ A_{λ,κ} P_λ.
pub(crate) fn derive(at: &LaurentMatrix, p: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let ap = at.mul_vec(p);
    p.iter().zip(ap).map(|(x, y)| x.derivative() + y).collect()
}

pub fn iterate_bracket(sc: &SystemClosure, g: &GradedPadeSystem, k_max: usize) -> IterTable {
    assert!(k_max >= 1, "k_max must be at least 1");
    let at = sc.a.transpose();
    let t_poly = sc.t_poly();
    let first = g.polys();
    let mut bracket = vec![first.clone()];
    let mut plain = vec![first];
    for _ in 1..k_max {
        let b = derive(&at, bracket.last().unwrap())
            .into_iter()
            .map(|x| &t_poly * &x)
            .collect();
        bracket.push(b);
        let p = derive(&at, plain.last().unwrap());
        plain.push(p);
    }
    IterTable {
        bracket,
        plain,
        m_deg: g.params.m_deg,
        t: sc.t,
    }
}

impl IterTable {
    pub fn k_max(&self) -> usize {
        self.bracket.len()
    }

    /// π_{k,κ,ν} = ν! · [z^ν] P^{[k]}_κ, required to be integers.
    pub fn bracket_integers(&self, k: usize) -> Result<Vec<Vec<BigInt>>, IterateError> {
        self.bracket[k - 1]
            .iter()
            .enumerate()
            .map(|(kappa, p)| {
                if p.is_zero() {
                    return Ok(Vec::new());
                }
                if p.low() < 0 {
                    return Err(IterateError::IntegralityViolated {
                        k,
                        kappa,
                        nu: p.low(),
                    });
                }
                (0..=p.degree().unwrap())
                    .map(|nu| {
                        let c = p.coeff(nu) * Rational::from_integer(factorial(nu as u64));
                        if c.is_integer() {
                            Ok(c.to_integer())
                        } else {
                            Err(IterateError::IntegralityViolated { k, kappa, nu })
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn degree_bound_holds(&self) -> bool {
        self.bracket.iter().enumerate().all(|(k, row)| {
            row.iter().all(|p| {
                p.degree()
                    .is_none_or(|d| (d as usize) < self.m_deg + self.t * k)
            })
        })
    }

    pub fn eval_bracket(&self, k: usize) -> Vec<Rational> {
        let one = Rational::from_integer(1.into());
        self.bracket[k - 1]
            .iter()
            .map(|p| p.eval(&one).expect("no pole at 1"))
            .collect()
    }

    pub fn eval_plain(&self, k: usize) -> Vec<Rational> {
        let one = Rational::from_integer(1.into());
        self.plain[k - 1]
            .iter()
            .map(|p| p.eval(&one).expect("no pole at 1"))
            .collect()
    }
}
