use crate::arith::{FracFn, MPoly, Matrix, Rational};
use crate::pade::GradedIndex;

/// The θ columns Z_κ = E_κ + Σ_j ξ_j E_{κ−e_j}, κ ∈ Θ, in the ambient space
/// indexed by Ω (GradedIndex order).
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaFrame {
    index: GradedIndex,
    cols: Vec<Vec<MPoly>>,
}

impl ThetaFrame {
    /// Frame with ξ_j = x_j.
    pub fn new(m: usize, n: u32) -> Self {
        let xi: Vec<MPoly> = (0..m).map(|j| MPoly::var(m, j)).collect();
        Self::with_xi(GradedIndex::new(m, n), &xi)
    }

    /// Frame with ξ_j replaced by arbitrary polynomials in x_1..x_m.
    pub fn with_xi(index: GradedIndex, xi: &[MPoly]) -> Self {
        assert_eq!(xi.len(), index.m());
        let nv = xi[0].nvars();
        let cols = (0..index.theta())
            .map(|k| {
                let mut v = vec![MPoly::zero(nv); index.omega()];
                v[k] = MPoly::one(nv);
                for (j, x) in xi.iter().enumerate() {
                    if let Some(p) = index.shifted(k, &[(j, -1)]) {
                        v[p] = &v[p] + x;
                    }
                }
                v
            })
            .collect();
        ThetaFrame { index, cols }
    }

    pub fn index(&self) -> &GradedIndex {
        &self.index
    }

    pub fn nvars(&self) -> usize {
        self.cols[0][0].nvars()
    }

    pub fn columns(&self) -> &[Vec<MPoly>] {
        &self.cols
    }

    pub fn matrix(&self) -> Matrix<FracFn> {
        let cols: Vec<Vec<FracFn>> = self
            .cols
            .iter()
            .map(|c| c.iter().cloned().map(FracFn::from_poly).collect())
            .collect();
        Matrix::from_cols(&cols, self.index.omega())
    }

    /// Applies a rational matrix to every column.
    pub fn apply(&self, map: &Matrix<Rational>) -> Vec<Vec<MPoly>> {
        self.cols.iter().map(|c| apply_to(map, c)).collect()
    }
}

pub(crate) fn apply_to(map: &Matrix<Rational>, v: &[MPoly]) -> Vec<MPoly> {
    let nv = v.first().map_or(0, MPoly::nvars);
    (0..map.rows())
        .map(|i| {
            map.row(i)
                .iter()
                .zip(v)
                .fold(MPoly::zero(nv), |acc, (a, x)| {
                    if num_traits::Zero::is_zero(a) || x.is_zero() {
                        acc
                    } else {
                        &acc + &x.scale(a)
                    }
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rank;

    #[test]
    fn frame_has_full_rank() {
        for (m, n) in [(1, 1), (1, 4), (2, 2), (3, 2), (2, 3)] {
            let f = ThetaFrame::new(m, n);
            assert_eq!(rank(&f.matrix()), f.index().theta());
        }
    }

    #[test]
    fn m1_column() {
        let f = ThetaFrame::new(1, 3);
        // Θ = {(3)}, then (2)
        assert_eq!(f.columns()[0], vec![MPoly::one(1), MPoly::var(1, 0)]);
    }
}
