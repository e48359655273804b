use num_bigint::BigInt;

use super::closure::SystemClosure;
use super::table::derive;
use crate::arith::{factorial, Ball, Dyadic, Rational};
use crate::pade::{GradedIndex, GradedPadeSystem};

/// Y(1) = Z_κ: 1 at κ, f_j(1) at κ − e_j.
pub fn z_vector(idx: &GradedIndex, kappa: usize, f_at_1: &[Ball], prec: u64) -> Vec<Ball> {
    let mut v = vec![Ball::zero(prec); idx.omega()];
    v[kappa] = Ball::from_int(1, prec);
    for (j, fj) in f_at_1.iter().enumerate() {
        if let Some(p) = idx.shifted(kappa, &[(j, -1)]) {
            v[p] = fj.clone();
        }
    }
    v
}

/// Taylor coefficients in u = z − 1 of the solution of Y' = AY with
/// Y(1) = initial, via (n+1) Y_{n+1} = Σ_{j≤n} A_j Y_{n−j}.
pub fn local_solution_at_one(sc: &SystemClosure, initial: &[Ball], order: usize) -> Vec<Vec<Ball>> {
    let w = sc.a.rows();
    assert_eq!(initial.len(), w);
    let prec = initial.iter().map(Ball::precision).max().unwrap_or(64);
    // a_exp[i][k][j] = coefficient of u^j in A_{i,k}(1+u)
    let a_exp: Vec<Vec<Vec<Option<Ball>>>> = (0..w)
        .map(|i| {
            (0..w)
                .map(|k| {
                    sc.a.get(i, k)
                        .expand_at_one(order)
                        .iter()
                        .map(|c| {
                            if num_traits::Zero::is_zero(c) {
                                None
                            } else {
                                Some(Ball::from_rational(c, prec))
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut y: Vec<Vec<Ball>> = initial.iter().map(|b| vec![b.clone()]).collect();
    for n in 0..order {
        let inv = Rational::new(BigInt::from(1), BigInt::from(n + 1));
        let next: Vec<Ball> = (0..w)
            .map(|i| {
                let mut acc = Ball::zero(prec);
                for (k, yk) in y.iter().enumerate() {
                    for j in 0..=n {
                        if let Some(c) = &a_exp[i][k][j] {
                            acc = &acc + &(c * &yk[n - j]);
                        }
                    }
                }
                acc.mul_rational(&inv)
            })
            .collect();
        for (i, b) in next.into_iter().enumerate() {
            y[i].push(b);
        }
    }
    y
}

/// Per-k defects (k−1)! [u^{k−1}] Σ P_κ(1+u) y_κ(u) − Σ P_{k,κ}(1) y_κ(1).
#[derive(Clone, Debug)]
pub struct DefectReport {
    pub defects: Vec<Ball>,
}

impl DefectReport {
    pub fn all_contain_zero(&self) -> bool {
        self.defects.iter().all(Ball::contains_zero)
    }

    /// Ball with the largest magnitude bound.
    pub fn max_defect(&self) -> &Ball {
        self.defects
            .iter()
            .max_by(|a, b| a.upper_abs().cmp(&b.upper_abs()))
            .expect("at least one k")
    }

    pub fn max_radius(&self) -> Dyadic {
        self.defects
            .iter()
            .map(|b| b.rad().clone())
            .max()
            .unwrap_or_else(Dyadic::zero)
    }
}

pub fn remainder_derivative_check(
    sc: &SystemClosure,
    g: &GradedPadeSystem,
    y: &[Vec<Ball>],
    k_max: usize,
) -> DefectReport {
    let w = sc.a.rows();
    let prec = y.iter().flatten().map(Ball::precision).max().unwrap_or(64);
    let at = sc.a.transpose();
    let p = g.polys();
    let p_at_one: Vec<Vec<Rational>> = p.iter().map(|q| q.expand_at_one(k_max)).collect();
    let one = Rational::from_integer(1.into());
    let mut pk = p.clone();
    let mut defects = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut lhs = Ball::zero(prec);
        for kappa in 0..w {
            for j in 0..k {
                let c = &p_at_one[kappa][j];
                if !num_traits::Zero::is_zero(c) {
                    lhs = &lhs + &y[kappa][k - 1 - j].mul_rational(c);
                }
            }
        }
        let lhs = lhs.mul_int(&factorial(k as u64 - 1));
        let mut rhs = Ball::zero(prec);
        for kappa in 0..w {
            let v = pk[kappa].eval(&one).expect("no pole at 1");
            rhs = &rhs + &y[kappa][0].mul_rational(&v);
        }
        defects.push(&lhs - &rhs);
        pk = derive(&at, &pk);
    }
    DefectReport { defects }
}
