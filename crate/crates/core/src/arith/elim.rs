//! Fraction-free Gauss–Jordan elimination.
//!
//! Every intermediate entry is a minor of the input, so the division by the
//! previous pivot is exact over any integral domain. Rational and function
//! field matrices are first scaled row by row into their integral rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::mpoly::{FracFn, MPoly};
use super::rational::Rational;

pub trait Domain: Clone {
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; panics if the division is not exact.
    fn div_exact(&self, o: &Self) -> Self;
    /// Pivot preference, smaller is cheaper.
    fn cost(&self) -> u64;
}

impl Domain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        assert!(Zero::is_zero(&r), "inexact integer division in elimination");
        q
    }
    fn cost(&self) -> u64 {
        self.bits()
    }
}

impl Domain for MPoly {
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.nvars())
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        MPoly::div_exact(self, o).expect("inexact polynomial division in elimination")
    }
    fn cost(&self) -> u64 {
        ((self.num_terms() as u64) << 40)
            | ((self.total_degree() as u64) << 32)
            | self.height_bits().min(u32::MAX as u64)
    }
}

/// Result of column-ordered fraction-free Gauss–Jordan.
struct Echelon<D> {
    rows: Vec<Vec<D>>,
    pivot_cols: Vec<usize>,
    det: Option<D>,
    swaps: usize,
}

fn bareiss_update<D: Domain>(
    rows: &mut [Vec<D>],
    k: usize,
    c: usize,
    prev: &D,
    start_col: usize,
    skip_above: bool,
) {
    let p = rows[k][c].clone();
    let pivot_row = rows[k].clone();
    let ncols = pivot_row.len();
    let first = if skip_above { k + 1 } else { 0 };
    for (i, row) in rows.iter_mut().enumerate().skip(first) {
        if i == k {
            continue;
        }
        let f = row[c].clone();
        for j in start_col..ncols {
            let t = if Domain::is_zero(&f) || Domain::is_zero(&pivot_row[j]) {
                if Domain::is_zero(&row[j]) {
                    continue;
                }
                p.mul(&row[j])
            } else {
                p.mul(&row[j]).sub(&f.mul(&pivot_row[j]))
            };
            row[j] = if Domain::is_zero(&t) {
                t
            } else {
                t.div_exact(prev)
            };
        }
    }
}

/// Gauss–Jordan with pivots chosen column by column (cheapest nonzero entry
/// in the column). All pivots end equal to `det`.
fn gauss_jordan<D: Domain>(mut rows: Vec<Vec<D>>, ncols: usize) -> Echelon<D> {
    let nrows = rows.len();
    let mut prev: Option<D> = None;
    let mut pivot_cols = Vec::new();
    let mut swaps = 0;
    let mut k = 0;
    for c in 0..ncols {
        if k == nrows {
            break;
        }
        let best = (k..nrows)
            .filter(|&r| !Domain::is_zero(&rows[r][c]))
            .min_by_key(|&r| rows[r][c].cost());
        let Some(r) = best else { continue };
        if r != k {
            rows.swap(r, k);
            swaps += 1;
        }
        let one = rows[k][c].one_like();
        bareiss_update(&mut rows, k, c, prev.as_ref().unwrap_or(&one), 0, false);
        prev = Some(rows[k][c].clone());
        pivot_cols.push(c);
        k += 1;
    }
    Echelon {
        rows,
        pivot_cols,
        det: prev,
        swaps,
    }
}

/// Rank by forward fraction-free elimination with full pivoting.
fn ff_rank<D: Domain>(mut rows: Vec<Vec<D>>, ncols: usize) -> usize {
    let nrows = rows.len();
    let mut prev: Option<D> = None;
    let mut used_cols = vec![false; ncols];
    let mut k = 0;
    while k < nrows {
        let mut best: Option<(u64, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate().skip(k) {
            for (c, x) in row.iter().enumerate() {
                if used_cols[c] || Domain::is_zero(x) {
                    continue;
                }
                let cost = x.cost();
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, c));
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        rows.swap(r, k);
        let one = rows[k][c].one_like();
        bareiss_update(&mut rows, k, c, prev.as_ref().unwrap_or(&one), 0, true);
        prev = Some(rows[k][c].clone());
        used_cols[c] = true;
        k += 1;
    }
    k
}

/// A field whose matrices can be scaled row-wise into an integral domain.
pub trait ExactField: Clone + PartialEq {
    type Ring: Domain;
    fn is_zero(&self) -> bool;
    fn row_to_ring(row: &[Self]) -> Vec<Self::Ring>;
    fn ratio(num: &Self::Ring, den: &Self::Ring) -> Self;
    fn one_like(&self) -> Self;
    /// The unit when it needs no template.
    fn unit() -> Option<Self> {
        None
    }
    /// A certified rank obtained without full elimination, when available.
    fn rank_shortcut(_rows: &[Vec<Self::Ring>], _ncols: usize) -> Option<usize> {
        None
    }
}

impl ExactField for Rational {
    type Ring = BigInt;
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn row_to_ring(row: &[Self]) -> Vec<BigInt> {
        let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
    }
    fn ratio(num: &BigInt, den: &BigInt) -> Self {
        Rational::new(num.clone(), den.clone())
    }
    fn one_like(&self) -> Self {
        <Rational as One>::one()
    }
    fn unit() -> Option<Self> {
        Some(<Rational as One>::one())
    }
}

impl ExactField for FracFn {
    type Ring = MPoly;
    fn is_zero(&self) -> bool {
        FracFn::is_zero(self)
    }
    fn row_to_ring(row: &[Self]) -> Vec<MPoly> {
        let mut dens: Vec<&MPoly> = Vec::new();
        for x in row {
            if !x.is_zero() && !x.den.is_constant() && !dens.contains(&&x.den) {
                dens.push(&x.den);
            }
        }
        let common = dens.iter().fold(
            MPoly::one(row.first().map_or(0, |x| x.num.nvars())),
            |acc, d| &acc * *d,
        );
        row.iter()
            .map(|x| {
                if x.is_zero() {
                    MPoly::zero(common.nvars())
                } else if x.den.is_constant() {
                    let c = x.den.terms().next().unwrap().1.recip();
                    &x.num.scale(&c) * &common
                } else {
                    &x.num
                        * &common
                            .div_exact(&x.den)
                            .expect("denominator divides product")
                }
            })
            .collect()
    }
    fn ratio(num: &MPoly, den: &MPoly) -> Self {
        FracFn::new(num.clone(), den.clone())
    }
    fn one_like(&self) -> Self {
        FracFn::constant(self.num.nvars(), <Rational as One>::one())
    }
    /// Specialises the indeterminates at fixed rational points. A rank equal
    /// to min(rows, cols) at a point is exact: a nonzero minor at a point is a
    /// nonzero polynomial minor, and the rank cannot exceed the dimensions.
    fn rank_shortcut(rows: &[Vec<MPoly>], ncols: usize) -> Option<usize> {
        let target = rows.len().min(ncols);
        let nv = rows.iter().flatten().next().map_or(0, |p| p.nvars());
        for attempt in 0..2i64 {
            let point: Vec<Rational> = (0..nv as i64)
                .map(|i| {
                    Rational::new(
                        BigInt::from(17 + 31 * i + 7 * attempt),
                        BigInt::from(5 + 2 * i + attempt),
                    )
                })
                .collect();
            let ints: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|row| {
                    Rational::row_to_ring(&row.iter().map(|p| p.eval(&point)).collect::<Vec<_>>())
                })
                .collect();
            if ff_rank(ints, ncols) == target {
                return Some(target);
            }
        }
        None
    }
}

fn ring_rows<F: ExactField>(m: &Matrix<F>) -> Vec<Vec<F::Ring>> {
    (0..m.rows()).map(|i| F::row_to_ring(m.row(i))).collect()
}

/// Exact rank over the field.
pub fn rank<F: ExactField>(m: &Matrix<F>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let rows = ring_rows(m);
    if let Some(r) = F::rank_shortcut(&rows, m.cols()) {
        return r;
    }
    ff_rank(rows, m.cols())
}

pub fn rank_int(m: &Matrix<BigInt>) -> usize {
    ff_rank(m.to_rows(), m.cols())
}

/// Basis of the right null space, one vector per non-pivot column with a 1
/// in that column (reduced row echelon convention).
pub fn kernel_basis<F: ExactField>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    let template = if m.rows() > 0 {
        Some(m[(0, 0)].clone())
    } else {
        None
    };
    let one = template
        .map(|t| t.one_like())
        .or_else(F::unit)
        .expect("kernel of a matrix with no entries");
    let unit = F::row_to_ring(std::slice::from_ref(&one)).remove(0);
    let zero = F::ratio(&unit.sub(&unit), &unit);
    let ech = gauss_jordan(ring_rows(m), n);
    let mut pivot_of = vec![None; n];
    for (i, &c) in ech.pivot_cols.iter().enumerate() {
        pivot_of[c] = Some(i);
    }
    (0..n)
        .filter(|&f| pivot_of[f].is_none())
        .map(|f| {
            (0..n)
                .map(|j| match pivot_of[j] {
                    _ if j == f => one.clone(),
                    Some(i) => F::ratio(&ech.rows[i][f].neg(), ech.det.as_ref().unwrap()),
                    None => zero.clone(),
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &Matrix<Rational>) -> Rational {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return <Rational as One>::one();
    }
    let mut scale = <Rational as One>::one();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = m
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= Rational::from_integer(l.clone());
            m.row(i)
                .iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect()
        })
        .collect();
    let ech = gauss_jordan(rows, n);
    if ech.pivot_cols.len() < n {
        return Rational::zero();
    }
    let d = Rational::from_integer(ech.det.unwrap());
    let d = if ech.swaps % 2 == 1 { -d } else { d };
    d / scale
}

/// Incrementally maintained span of rational vectors.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    basis: Vec<(usize, Vec<Rational>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, b) in &self.basis {
            if !Zero::is_zero(&v[*p]) {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !Zero::is_zero(y) {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !Zero::is_zero(x)) else {
            return false;
        };
        let inv = r[p].recip();
        let r: Vec<Rational> = r.iter().map(|x| x * &inv).collect();
        for (_, b) in self.basis.iter_mut() {
            if !Zero::is_zero(&b[p]) {
                let f = b[p].clone();
                for (x, y) in b.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        self.basis.push((p, r));
        true
    }
}
