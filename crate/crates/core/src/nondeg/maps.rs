use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::frame::{apply_to, ThetaFrame};
use crate::arith::{binomial, determinant, MPoly, Matrix, Rational};
use crate::pade::GradedIndex;

type Binom<'a> = &'a dyn Fn(u64, u64) -> BigInt;

fn std_binomial(n: u64, k: u64) -> BigInt {
    binomial(n, k)
}

/// f(E_κ) = Σ_{t=0}^{κ_j0} C(t+κ_j1, κ_j1) E_{κ − t e_j0 + t e_j1}, as the
/// matrix whose column κ is f(E_κ). Coordinates j0, j1 are 0-based.
pub fn glm_case3_map(m: usize, n: u32, j0: usize, j1: usize) -> Matrix<BigInt> {
    glm_case3_map_with(m, n, j0, j1, &std_binomial)
}

pub fn glm_case3_map_with(m: usize, n: u32, j0: usize, j1: usize, binom: Binom) -> Matrix<BigInt> {
    assert!(
        j0 != j1 && j0 < m && j1 < m,
        "need distinct coordinates below m"
    );
    let idx = GradedIndex::new(m, n);
    let w = idx.omega();
    let mut f = Matrix::filled(w, w, BigInt::zero());
    for k in 0..w {
        let kv = idx.kappa(k);
        for t in 0..=kv[j0] as i64 {
            let target = idx
                .shifted(k, &[(j0, -t), (j1, t)])
                .expect("grade is preserved");
            f[(target, k)] += binom((t + kv[j1] as i64) as u64, kv[j1] as u64);
        }
    }
    f
}

fn to_rational(m: &Matrix<BigInt>) -> Matrix<Rational> {
    m.map(|x| Rational::from_integer(x.clone()))
}

/// Pascal step on frames: for κ ∈ Θ,
/// f(E_{κ−e_j1}) + f(E_{κ−e_j0}) = Σ_t C(t+κ_j1, κ_j1) E_{κ − t e_j0 + (t−1) e_j1},
/// absent indices contributing nothing.
pub fn pascal_identity_with(m: usize, n: u32, j0: usize, j1: usize, binom: Binom) -> bool {
    let idx = GradedIndex::new(m, n);
    let w = idx.omega();
    let f = glm_case3_map_with(m, n, j0, j1, binom);
    (0..idx.theta()).all(|k| {
        let kv = idx.kappa(k);
        let mut lhs = vec![BigInt::zero(); w];
        for j in [j1, j0] {
            if let Some(p) = idx.shifted(k, &[(j, -1)]) {
                for (i, x) in lhs.iter_mut().enumerate() {
                    *x += &f[(i, p)];
                }
            }
        }
        let mut rhs = vec![BigInt::zero(); w];
        for t in 0..=kv[j0] as i64 {
            if let Some(p) = idx.shifted(k, &[(j0, -t), (j1, t - 1)]) {
                rhs[p] += binom((t + kv[j1] as i64) as u64, kv[j1] as u64);
            }
        }
        lhs == rhs
    })
}

/// With ξ'_j0 = x_j0 + x_j1 and ξ'_j = x_j otherwise, checks
/// f(Z'_κ) = Σ_t C(t+κ_j1, κ_j1) Z_{κ − t e_j0 + t e_j1} for every κ ∈ Θ, the
/// Pascal step, and det f = ±1.
pub fn case3_frame_identity(m: usize, n: u32, j0: usize, j1: usize) -> bool {
    case3_frame_identity_with(m, n, j0, j1, &std_binomial)
}

pub fn case3_frame_identity_with(m: usize, n: u32, j0: usize, j1: usize, binom: Binom) -> bool {
    let idx = GradedIndex::new(m, n);
    let f = glm_case3_map_with(m, n, j0, j1, binom);
    let fq = to_rational(&f);
    let det = determinant(&fq);
    if det.abs() != Rational::from_integer(1.into()) {
        return false;
    }
    let frame = ThetaFrame::new(m, n);
    let mut xi: Vec<MPoly> = (0..m).map(|j| MPoly::var(m, j)).collect();
    xi[j0] = &xi[j0] + &xi[j1];
    let primed = ThetaFrame::with_xi(idx.clone(), &xi);
    let ok = (0..idx.theta()).all(|k| {
        let kv = idx.kappa(k);
        let lhs = apply_to(&fq, &primed.columns()[k]);
        let mut rhs = vec![MPoly::zero(m); idx.omega()];
        for t in 0..=kv[j0] as i64 {
            let c = Rational::from_integer(binom((t + kv[j1] as i64) as u64, kv[j1] as u64));
            let target = idx
                .shifted(k, &[(j0, -t), (j1, t)])
                .expect("grade is preserved");
            for (r, z) in rhs.iter_mut().zip(&frame.columns()[target]) {
                *r = &*r + &z.scale(&c);
            }
        }
        lhs == rhs
    });
    ok && pascal_identity_with(m, n, j0, j1, binom)
}

/// Relabelling by σ (ξ'_j = x_σ(j)) maps each Z'_κ to Z_σκ, where
/// (σκ)_σ(j) = κ_j.
pub fn permutation_equivariance(m: usize, n: u32, sigma: &[usize]) -> bool {
    assert_eq!(sigma.len(), m);
    let idx = GradedIndex::new(m, n);
    let permute = |kv: &[u32]| {
        let mut out = vec![0; m];
        for j in 0..m {
            out[sigma[j]] = kv[j];
        }
        out
    };
    let w = idx.omega();
    let mut g = Matrix::<Rational>::zeros(w, w);
    for k in 0..w {
        g[(
            idx.position(&permute(idx.kappa(k)))
                .expect("permutation preserves Ω"),
            k,
        )] = Rational::from_integer(1.into());
    }
    let xi: Vec<MPoly> = sigma.iter().map(|&s| MPoly::var(m, s)).collect();
    let primed = ThetaFrame::with_xi(idx.clone(), &xi);
    let frame = ThetaFrame::new(m, n);
    (0..idx.theta()).all(|k| {
        let target = idx.position(&permute(idx.kappa(k))).unwrap();
        apply_to(&g, &primed.columns()[k]) == frame.columns()[target]
    })
}

/// With ξ'_j0 = λ x_j0 and f(E_κ) = λ^{κ_j0} E_κ: f(Z'_κ) = λ^{κ_j0} Z_κ.
pub fn scaling_identity(m: usize, n: u32, j0: usize, lambda: &Rational) -> bool {
    assert!(!lambda.is_zero());
    let idx = GradedIndex::new(m, n);
    let w = idx.omega();
    let mut f = Matrix::<Rational>::zeros(w, w);
    for k in 0..w {
        f[(k, k)] = lambda.pow(idx.kappa(k)[j0] as i32);
    }
    let mut xi: Vec<MPoly> = (0..m).map(|j| MPoly::var(m, j)).collect();
    xi[j0] = xi[j0].scale(lambda);
    let primed = ThetaFrame::with_xi(idx.clone(), &xi);
    let frame = ThetaFrame::new(m, n);
    (0..idx.theta()).all(|k| {
        let c = lambda.pow(idx.kappa(k)[j0] as i32);
        let expected: Vec<MPoly> = frame.columns()[k].iter().map(|z| z.scale(&c)).collect();
        apply_to(&f, &primed.columns()[k]) == expected
    })
}
