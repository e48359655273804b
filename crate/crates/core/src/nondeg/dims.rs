use num_traits::Zero;
use serde::Serialize;

use super::frame::ThetaFrame;
use super::subspace::SubspaceBasis;
use crate::arith::{rank, FracFn, MPoly, Matrix, Rational};
use crate::pade::GradedIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub dim_r: usize,
    pub dim_fr: usize,
    pub dim_frk: usize,
}

fn to_frac(nv: usize, v: &[Rational]) -> Vec<FracFn> {
    v.iter().map(|x| FracFn::constant(nv, x.clone())).collect()
}

/// dim(F ∩ R) = θ + dim R − rank[F | R].
pub fn frame_intersection_dim(frame: &ThetaFrame, r: &SubspaceBasis) -> usize {
    let nv = frame.nvars();
    let w = frame.index().omega();
    let mut cols: Vec<Vec<FracFn>> = frame
        .columns()
        .iter()
        .map(|c| c.iter().cloned().map(FracFn::from_poly).collect())
        .collect();
    cols.extend(r.columns().iter().map(|c| to_frac(nv, c)));
    let theta = frame.index().theta();
    theta + r.dim() - rank(&Matrix::from_cols(&cols, w))
}

/// dim(F ∩ R) = θ − rank(C·F) with C the annihilator of R.
pub fn frame_intersection_dim_direct(frame: &ThetaFrame, r: &SubspaceBasis) -> usize {
    let theta = frame.index().theta();
    let c = r.annihilator();
    if c.is_empty() {
        return theta;
    }
    let nv = frame.nvars();
    let rows: Vec<Vec<FracFn>> = c
        .iter()
        .map(|row| {
            frame
                .columns()
                .iter()
                .map(|col| {
                    let p = row.iter().zip(col).fold(MPoly::zero(nv), |acc, (a, x)| {
                        if a.is_zero() {
                            acc
                        } else {
                            &acc + &x.scale(a)
                        }
                    });
                    FracFn::from_poly(p)
                })
                .collect()
        })
        .collect();
    theta - rank(&Matrix::from_rows(rows))
}

fn dims_with(
    frame: &ThetaFrame,
    r: &SubspaceBasis,
    f: fn(&ThetaFrame, &SubspaceBasis) -> usize,
) -> Dims {
    let rk = r.intersect(&SubspaceBasis::k_space(frame.index()));
    Dims {
        dim_r: r.dim(),
        dim_fr: f(frame, r),
        dim_frk: f(frame, &rk),
    }
}

/// (dim R, dim F∩R, dim F∩R∩K) through the augmented matrices.
pub fn intersection_dims(frame: &ThetaFrame, r: &SubspaceBasis) -> Dims {
    dims_with(frame, r, frame_intersection_dim)
}

/// Same counts through the annihilator of R.
pub fn intersection_dims_direct(frame: &ThetaFrame, r: &SubspaceBasis) -> Dims {
    dims_with(frame, r, frame_intersection_dim_direct)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityCheck {
    pub dims: Dims,
    /// dim R
    pub lhs: Rational,
    /// (ω/θ)·dim(F∩R), i.e. (2 − (m−1)/(N+m−1))·dim(F∩R)
    pub rhs: Rational,
    pub holds: bool,
    pub strict: bool,
    pub trivial_or_full: bool,
    /// dim(F∩R∩K) ≥ 2 dim(F∩R) − dim R, reported for diagnostics only.
    pub aux_holds: bool,
}

impl InequalityCheck {
    /// The inequality holds, and equality only occurs for R = 0 or R = everything.
    pub fn consistent(&self) -> bool {
        self.holds && (self.strict || self.trivial_or_full)
    }
}

pub fn check_inequality(frame: &ThetaFrame, r: &SubspaceBasis) -> InequalityCheck {
    let dims = intersection_dims(frame, r);
    let idx = frame.index();
    let lhs = Rational::from_integer(dims.dim_r.into());
    let rhs = idx.ratio() * Rational::from_integer(dims.dim_fr.into());
    InequalityCheck {
        holds: lhs >= rhs,
        strict: lhs > rhs,
        trivial_or_full: dims.dim_r == 0 || dims.dim_r == idx.omega(),
        aux_holds: dims.dim_frk + dims.dim_r >= 2 * dims.dim_fr,
        dims,
        lhs,
        rhs,
    }
}

/// π(E_κ) = E_{κ−e_m} (zero when κ_m = 0), from Ω(m, N) to Ω(m, N−1).
pub fn projection_matrix(idx: &GradedIndex) -> Matrix<Rational> {
    assert!(idx.n() >= 2, "projection needs N >= 2");
    let lower = GradedIndex::new(idx.m(), idx.n() - 1);
    let m = idx.m();
    let mut p = Matrix::<Rational>::zeros(lower.omega(), idx.omega());
    for k in 0..idx.omega() {
        let mut kv = idx.kappa(k).to_vec();
        if kv[m - 1] > 0 {
            kv[m - 1] -= 1;
            p[(
                lower.position(&kv).expect("lowered index stays in range"),
                k,
            )] = Rational::from_integer(1.into());
        }
    }
    p
}

/// dim R = dim(R∩K) + dim π(R), and π(F) spans the (m, N−1) frame.
pub fn projection_split_check(m: usize, n: u32, r: &SubspaceBasis) -> bool {
    let idx = GradedIndex::new(m, n);
    let pi = projection_matrix(&idx);
    let rk = r.intersect(&SubspaceBasis::k_space(&idx));
    let split = r.dim() == rk.dim() + r.image(&pi).dim();

    let frame = ThetaFrame::new(m, n);
    let lower = ThetaFrame::new(m, n - 1);
    let w = lower.index().omega();
    let to_cols = |cols: &[Vec<MPoly>]| -> Vec<Vec<FracFn>> {
        cols.iter()
            .map(|c| c.iter().cloned().map(FracFn::from_poly).collect())
            .collect()
    };
    let image = to_cols(&frame.apply(&pi));
    let target = to_cols(lower.columns());
    let ri = rank(&Matrix::from_cols(&image, w));
    let rt = rank(&Matrix::from_cols(&target, w));
    let both: Vec<Vec<FracFn>> = image.iter().chain(&target).cloned().collect();
    let rb = rank(&Matrix::from_cols(&both, w));
    split && ri == rt && rb == rt
}
