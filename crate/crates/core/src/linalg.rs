//! Exact dense linear algebra over a field.
//!
//! Everything here is Gauss-Jordan elimination with exact zero tests. The
//! pivot row in each column is the one with the smallest entry (by
//! `Field::size`), which keeps rational-function fill-in down; the choice of
//! pivot *columns* is always left to right so results are deterministic.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::RatFunc;

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `o` is nonzero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn size(&self) -> usize;
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        RatFunc::div(self, o).expect("pivot is nonzero")
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn size(&self) -> usize {
        self.weight()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn size(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(cols: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, E>>()?,
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_zero())
                .min_by_key(|&i| self[(i, c)].size());
            let Some(p) = best else { continue };
            self.swap_rows(r, p);
            let inv = F::one().div(&self[(r, c)]);
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = self[(r, j)].mul(&inv);
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let t = factor.mul(&self[(r, j)]);
                    self[(i, j)] = self[(i, j)].sub(&t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`: one vector per free column, with a 1 in
    /// that column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![F::zero(); self.cols];
            x[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = m[(r, free)].neg();
            }
            out.push(x);
        }
        out
    }

    /// Some solution of `A x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let best = (c..n)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by_key(|&i| m[(i, c)].size());
            let Some(p) = best else { return F::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = det.neg();
            }
            let pivot = m[(c, c)].clone();
            det = det.mul(&pivot);
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].div(&pivot);
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let t = factor.mul(&m[(c, j)]);
                        m[(i, j)] = m[(i, j)].sub(&t);
                    }
                }
            }
        }
        det
    }

    /// Determinants of the leading principal submatrices, sizes 1..=n.
    pub fn leading_minors(&self) -> Vec<F> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.submatrix(&idx, &idx).det()
            })
            .collect()
    }
}

impl Matrix<BigRational> {
    /// Sylvester's criterion on a symmetric rational matrix.
    pub fn first_nonpositive_minor(&self) -> Option<(usize, BigRational)> {
        self.leading_minors()
            .into_iter()
            .enumerate()
            .find(|(_, m)| !m.is_positive())
            .map(|(k, m)| (k + 1, m))
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Basis (as row-reduced rows) of the span of `vectors`, each of length `dim`.
pub fn span_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vectors.to_vec(), dim);
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

pub fn span_rank<F: Field>(vectors: &[Vec<F>], dim: usize) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), dim).rank()
}

/// `x` lies in the span of `basis`.
pub fn in_span<F: Field>(basis: &[Vec<F>], x: &[F], dim: usize) -> bool {
    if x.iter().all(|c| c.is_zero()) {
        return true;
    }
    let mut all = basis.to_vec();
    all.push(x.to_vec());
    span_rank(&all, dim) == span_rank(basis, dim)
}

/// Coordinates of `x` in terms of the (independent) `basis`, if it lies in its span.
pub fn coordinates<F: Field>(basis: &[Vec<F>], x: &[F], dim: usize) -> Option<Vec<F>> {
    if basis.is_empty() {
        return x.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    Matrix::from_cols(basis, dim).solve(x)
}

/// Greedy choice of unit vectors `e_i` (in increasing `i`) completing the
/// span of `sub` to the whole space.
pub fn complement_indices<F: Field>(sub: &[Vec<F>], dim: usize) -> Vec<usize> {
    let mut current = span_basis(sub, dim);
    let mut rank = current.len();
    let mut chosen = Vec::new();
    for i in 0..dim {
        if rank == dim {
            break;
        }
        let mut e = vec![F::zero(); dim];
        e[i] = F::one();
        current.push(e);
        let r = span_rank(&current, dim);
        if r > rank {
            rank = r;
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}
