//! Exact dense linear algebra over a [`Scalar`] field, subspaces and outermorphisms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{check_dim, Error, Result};
use crate::index::Blade;
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds from rows of equal length.
    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { left: cols, right: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Builds from columns of equal length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<S>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { left: rows, right: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { left: self.cols, right: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(S::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone()))
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = S::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, in column order.
    pub fn null_space(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![S::zero(); self.cols];
            x[free] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -r.get(row, free).clone();
            }
            basis.push(x);
        }
        basis
    }

    /// Some solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { left: self.rows, right: b.len() });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, S::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// A subspace of `S^n`, stored by its canonical (RREF) basis.
///
/// Two subspaces are equal exactly when their canonical bases are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vec<S>>,
}

impl<S: Scalar> Subspace<S> {
    /// The span of the given vectors, each of length `n`.
    pub fn span(n: usize, vectors: &[Vec<S>]) -> Result<Self> {
        check_dim(n)?;
        if vectors.is_empty() {
            return Ok(Self::zero(n));
        }
        let m = Matrix::from_rows(vectors)?;
        if m.cols() != n {
            return Err(Error::DimensionMismatch { left: n, right: m.cols() });
        }
        let (r, pivots) = m.rref();
        Ok(Subspace { ambient: n, basis: (0..pivots.len()).map(|i| r.row(i)).collect() })
    }

    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::<S>::identity(n).rows_vec() }
    }

    /// `span{v_i : i in b}`.
    pub fn coordinate(n: usize, b: Blade) -> Result<Self> {
        let vecs: Vec<Vec<S>> = b.indices().map(|i| unit(n, i as usize - 1)).collect();
        Self::span(n, &vecs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the subspace.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis in reduced row echelon form.
    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient })
        }
    }

    pub fn contains(&self, v: &[S]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: v.len() });
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(Matrix::from_rows(&rows)?.rank() == self.rank())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &rows)
    }

    /// `{x : <u, x> = 0 for all u}` under the Hermitian pairing.
    pub fn orth_complement(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        let conj: Vec<Vec<S>> = self.basis.iter().map(|r| r.iter().map(S::conj).collect()).collect();
        let m = Matrix::from_rows(&conj).expect("rows share the ambient length");
        let ns = m.null_space();
        Self::span(self.ambient, &ns).expect("ambient dimension already validated")
    }

    /// `U n V`, computed as `(U^perp + V^perp)^perp`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        Ok(self.orth_complement().sum(&other.orth_complement())?.orth_complement())
    }

    /// Exterior product of the canonical basis; `1` for the zero subspace.
    pub fn blade(&self) -> Result<Multivector<S>> {
        Multivector::wedge_vectors(self.ambient, &self.basis)
    }

    /// Orthogonal projector `A (A* A)^-1 A*` with `A` the basis as columns.
    pub fn projector(&self) -> Result<LinearMap<S>> {
        let n = self.ambient;
        if self.basis.is_empty() {
            return LinearMap::new(Matrix::zeros(n, n));
        }
        let a = Matrix::from_cols(n, &self.basis)?;
        let gram = a.adjoint().mul(&a)?;
        let inv = gram.inverse().ok_or_else(|| Error::Domain("Gram matrix of a subspace basis is singular".into()))?;
        LinearMap::new(a.mul(&inv)?.mul(&a.adjoint())?)
    }

    /// Image under a linear map.
    pub fn image(&self, t: &LinearMap<S>) -> Result<Self> {
        if t.source() != self.ambient {
            return Err(Error::DimensionMismatch { left: t.source(), right: self.ambient });
        }
        let imgs: Result<Vec<Vec<S>>> = self.basis.iter().map(|b| t.matrix().mul_vec(b)).collect();
        Self::span(t.target(), &imgs?)
    }
}

impl<S: Scalar> fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?} in dim {}", self.basis, self.ambient)
    }
}

impl<S: Scalar> Matrix<S> {
    fn rows_vec(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
}

pub(crate) fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// A linear map `S^m -> S^n`; column `j` is the image of `v_{j+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> fmt::Debug for LinearMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap{:?}", self.matrix)
    }
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        check_dim(matrix.rows())?;
        check_dim(matrix.cols())?;
        Ok(LinearMap { matrix })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(Matrix::identity(n))
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn source(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target(&self) -> usize {
        self.matrix.rows()
    }

    pub fn compose(&self, inner: &Self) -> Result<Self> {
        Self::new(self.matrix.mul(&inner.matrix)?)
    }

    /// Extension `v_{i1} ^ ... ^ v_{ip} -> T v_{i1} ^ ... ^ T v_{ip}` to the whole algebra.
    pub fn outermorphism(&self, m: &Multivector<S>) -> Result<Multivector<S>> {
        if m.dim() != self.source() {
            return Err(Error::DimensionMismatch { left: self.source(), right: m.dim() });
        }
        let n = self.target();
        let images: Vec<Multivector<S>> =
            (0..self.source()).map(|j| Multivector::vector(&self.matrix.col(j))).collect::<Result<_>>()?;
        let mut acc = Multivector::zero(n)?;
        for (b, c) in m.terms() {
            let mut w = Multivector::scalar(n, c.clone())?;
            for i in b.indices() {
                w = w.wedge(&images[i as usize - 1])?;
                if w.is_zero() {
                    break;
                }
            }
            acc = &acc + &w;
        }
        Ok(acc)
    }
}

impl<S: Scalar> Multivector<S> {
    /// Orthogonal projection onto `span` extended as an outermorphism.
    pub fn project(&self, span: &Subspace<S>) -> Result<Multivector<S>> {
        span.projector()?.outermorphism(self)
    }
}
