use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::rational::Rational;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: &[Vec<T>], nrows: usize) -> Self {
        let c = cols.len();
        let mut data = Vec::with_capacity(nrows * c);
        for i in 0..nrows {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix {
            rows: nrows,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let cols: Vec<Vec<T>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        Matrix::from_cols(&cols, self.cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let cols: Vec<Vec<T>> = idx.iter().map(|&j| self.col(j)).collect();
        Matrix::from_cols(&cols, self.rows)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, o: &Matrix<T>) -> Self {
        assert_eq!(self.rows, o.rows);
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(o.row(i)).cloned().collect())
            .collect();
        let mut m = Matrix::from_rows(rows);
        m.cols = self.cols + o.cols;
        m
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<Rational> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::from_integer(1.into());
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, o: &Matrix<Rational>) -> Matrix<Rational> {
        assert_eq!(self.cols, o.rows);
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        r[(i, j)] += a * b;
                    }
                }
            }
        }
        r
    }
}
