use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::IterateError;
use crate::arith::{LaurentMatrix, LaurentPoly, Rational};
use crate::efunc::DiffSystem;
use crate::pade::GradedIndex;

/// T(z) = τ z^i clearing all S_{l,j}, the degree bound t and the ω×ω matrix A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemClosure {
    pub tau: BigInt,
    pub shift: i64,
    pub t: usize,
    pub a: LaurentMatrix,
    pub index: GradedIndex,
}

impl SystemClosure {
    pub fn t_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(Rational::from_integer(self.tau.clone()), self.shift)
    }

    /// Same closure with a replaced A (fault injection and experiments).
    pub fn with_a(&self, a: LaurentMatrix) -> Self {
        SystemClosure { a, ..self.clone() }
    }
}

/// A_{λ,κ} = −λ_j S_{l,j} if κ = λ − e_j + e_l (j ≠ l); −Σ_j λ_j S_{j,j} if
/// κ = λ; S_{j,0} if κ = λ + e_j and |λ| = N − 1; zero otherwise.
pub fn build_a(sys: &DiffSystem, idx: &GradedIndex) -> Result<SystemClosure, IterateError> {
    let m = sys.m();
    if m != idx.m() {
        return Err(IterateError::DimensionMismatch {
            system: m,
            index: idx.m(),
        });
    }
    let entries = sys.matrix().entries();
    let shift = entries
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| -p.low())
        .max()
        .unwrap_or(0)
        .max(0);
    let tau = entries
        .iter()
        .flat_map(|p| p.coeffs().iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let t_poly = LaurentPoly::monomial(Rational::from_integer(tau.clone()), shift);
    let t = entries
        .iter()
        .filter_map(|p| (&t_poly * p).degree())
        .max()
        .unwrap_or(0)
        .max(shift) as usize;

    let w = idx.omega();
    let mut a = LaurentMatrix::zeros(w, w);
    let add = |a: &mut LaurentMatrix, i: usize, j: usize, p: LaurentPoly| {
        let cur = a.get(i, j).clone();
        a.set(i, j, cur + p);
    };
    for lam in 0..w {
        let lv = idx.kappa(lam).to_vec();
        for j in 0..m {
            if lv[j] == 0 {
                continue;
            }
            let lj = Rational::from_integer(lv[j].into());
            add(&mut a, lam, lam, -sys.entry(j + 1, j + 1).scale(&lj));
            for l in 0..m {
                if l == j {
                    continue;
                }
                let kappa = idx
                    .shifted(lam, &[(j, -1), (l, 1)])
                    .expect("same grade stays in Omega");
                add(&mut a, lam, kappa, -sys.entry(l + 1, j + 1).scale(&lj));
            }
        }
        if lv.iter().sum::<u32>() + 1 == idx.n() {
            for j in 0..m {
                let kappa = idx.shifted(lam, &[(j, 1)]).expect("top grade is in Omega");
                add(&mut a, lam, kappa, sys.entry(j + 1, 0).clone());
            }
        }
    }
    Ok(SystemClosure {
        tau,
        shift,
        t,
        a,
        index: idx.clone(),
    })
}
