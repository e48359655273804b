use rand::Rng;

use crate::arith::{kernel_basis, rat, Matrix, Rational, SpanBuilder};
use crate::pade::GradedIndex;

/// Linearly independent rational columns spanning a subspace of Q^ambient.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    ambient: usize,
    cols: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    /// Keeps the vectors that enlarge the span, in order.
    pub fn new(ambient: usize, vecs: Vec<Vec<Rational>>) -> Self {
        let mut span = SpanBuilder::new();
        let cols = vecs
            .into_iter()
            .filter(|v| {
                assert_eq!(
                    v.len(),
                    ambient,
                    "vector length differs from ambient dimension"
                );
                span.insert(v)
            })
            .collect();
        SubspaceBasis { ambient, cols }
    }

    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            cols: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            cols: Matrix::<Rational>::identity(ambient).to_rows(),
        }
    }

    /// K = span{E_κ : κ_m = 0}.
    pub fn k_space(idx: &GradedIndex) -> Self {
        let m = idx.m();
        let cols = (0..idx.omega())
            .filter(|&p| idx.kappa(p)[m - 1] == 0)
            .map(|p| unit(idx.omega(), p))
            .collect();
        SubspaceBasis {
            ambient: idx.omega(),
            cols,
        }
    }

    /// Entries uniform in −bound..=bound, redrawn until the span reaches `dim`.
    pub fn random<R: Rng>(ambient: usize, dim: usize, bound: i64, rng: &mut R) -> Self {
        assert!(dim <= ambient);
        let mut span = SpanBuilder::new();
        let mut cols = Vec::with_capacity(dim);
        while cols.len() < dim {
            let v: Vec<Rational> = (0..ambient)
                .map(|_| rat(rng.gen_range(-bound..=bound), 1))
                .collect();
            if span.insert(&v) {
                cols.push(v);
            }
        }
        SubspaceBasis { ambient, cols }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<Rational>] {
        &self.cols
    }

    pub fn matrix(&self) -> Matrix<Rational> {
        Matrix::from_cols(&self.cols, self.ambient)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut span = SpanBuilder::new();
        for c in &self.cols {
            span.insert(c);
        }
        span.contains(v)
    }

    /// Rows spanning the linear forms vanishing on the subspace.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        if self.cols.is_empty() {
            return Matrix::<Rational>::identity(self.ambient).to_rows();
        }
        kernel_basis(&Matrix::from_rows(self.cols.clone()))
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient, other.ambient);
        if self.cols.is_empty() || other.cols.is_empty() {
            return SubspaceBasis::zero(self.ambient);
        }
        let a = self.matrix();
        let both = a.hcat(&other.matrix());
        let r = self.dim();
        let vecs = kernel_basis(&both)
            .into_iter()
            .map(|k| a.mul_vec(&k[..r]))
            .collect();
        SubspaceBasis::new(self.ambient, vecs)
    }

    /// Image under a linear map given by its matrix.
    pub fn image(&self, map: &Matrix<Rational>) -> SubspaceBasis {
        assert_eq!(map.cols(), self.ambient);
        SubspaceBasis::new(
            map.rows(),
            self.cols.iter().map(|c| map.mul_vec(c)).collect(),
        )
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat(0, 1); n];
    v[i] = rat(1, 1);
    v
}
