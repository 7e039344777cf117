//! Exact dense linear algebra: row reduction, kernels, subspace lattice
//! operations, annihilators. Subspaces are kept in reduced row-echelon form
//! so equality of subspaces is equality of representations.

use crate::scalar::{Field, Scalar};
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            field,
            data,
        }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn push_row(&mut self, r: Vec<Scalar>) {
        assert_eq!(r.len(), self.cols);
        self.data.extend(r);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector given as a slice.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, x.len(), "apply: dimension mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(xj));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// In-place Gauss-Jordan elimination to reduced row-echelon form.
    /// Pivoting is leftmost nonzero column, first nonzero row, in fixed row
    /// order. Returns pivot column indices.
    pub fn row_reduce_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            // find a row with nonzero entry in column c at or below r
            let mut sel = None;
            for i in r..self.rows {
                if !self.get(i, c).is_zero() {
                    sel = Some(i);
                    break;
                }
            }
            let Some(i) = sel else { continue };
            self.swap_rows(r, i);
            // normalize pivot to 1
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..self.cols {
                    let v = self.get(r, j).mul(&inv);
                    self.set(r, j, v);
                }
            }
            // eliminate the column everywhere else
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Deletes all-zero rows; useful after reduction.
    pub fn drop_zero_rows(&mut self) {
        let cols = self.cols;
        let mut kept = Vec::new();
        for i in 0..self.rows {
            if self.row(i).iter().any(|s| !s.is_zero()) {
                kept.extend_from_slice(&self.data[i * cols..(i + 1) * cols]);
            }
        }
        self.rows = kept.len() / cols.max(1);
        if cols == 0 {
            self.rows = 0;
        }
        self.data = kept;
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce_in_place().len()
    }

    /// Inverse of a square matrix, by reducing [self | I].
    pub fn inverse(&self) -> crate::Result<Matrix> {
        if self.rows != self.cols {
            return Err(crate::Error::NotInvertible);
        }
        let n = self.rows;
        let mut aug = Matrix::zero(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.row_reduce_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(crate::Error::NotInvertible);
        }
        Ok(Matrix::from_fn(self.field, n, n, |i, j| {
            aug.get(i, n + j).clone()
        }))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Canonical reduced row-echelon form together with its pivot columns.
/// Zero rows are dropped, so `matrix.rows` is the rank.
pub fn row_reduce(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut r = m.clone();
    let pivots = r.row_reduce_in_place();
    r.drop_zero_rows();
    (r, pivots)
}

/// A linear subspace of `k^ambient`, stored as a canonical reduced-echelon
/// basis. Two equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(field, 0, ambient),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Canonicalizes a spanning set.
    pub fn from_spanning(m: &Matrix) -> Self {
        let (basis, _) = row_reduce(m);
        Subspace {
            ambient: m.cols,
            basis,
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut m = self.basis.clone();
        m.push_row(v.to_vec());
        m.rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Sum of subspaces.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let mut m = self.basis.clone();
        for i in 0..other.dim() {
            m.push_row(other.basis.row_vec(i));
        }
        Ok(Subspace::from_spanning(&m))
    }

    /// Intersection, via the kernel of the stacked basis with bookkeeping
    /// columns.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        // Solve a * self.basis = b * other.basis: kernel of [self^T | -other^T]
        // expressed on coefficient space.
        let du = self.dim();
        let dw = other.dim();
        let field = self.field();
        let mut stacked = Matrix::zero(field, self.ambient, du + dw);
        for j in 0..du {
            for i in 0..self.ambient {
                stacked.set(i, j, self.basis.get(j, i).clone());
            }
        }
        for j in 0..dw {
            for i in 0..self.ambient {
                stacked.set(i, du + j, other.basis.get(j, i).neg());
            }
        }
        let ker = kernel(&stacked);
        // each kernel vector (a | b) gives a point a * self.basis
        let mut rows = Vec::new();
        for i in 0..ker.dim() {
            let coeffs = &ker.basis.row(i)[..du];
            let mut v = vec![field.zero(); self.ambient];
            for (j, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for t in 0..self.ambient {
                    v[t] = v[t].add(&c.mul(self.basis.get(j, t)));
                }
            }
            rows.push(v);
        }
        Ok(Subspace::from_spanning(&Matrix::from_rows(
            field,
            self.ambient,
            rows,
        )))
    }
}

/// Intersection and sum in one call.
pub fn meet_join(u: &Subspace, w: &Subspace) -> Result<(Subspace, Subspace)> {
    Ok((u.meet(w)?, u.join(w)?))
}

/// The space of all `x` with `m * x = 0`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = row_reduce(m);
    let field = m.field;
    let mut rows = Vec::new();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols];
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = Some(row);
        }
        v
    };
    for free in 0..m.cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (c, slot) in pivot_set.iter().enumerate() {
            if let Some(row) = slot {
                v[c] = r.get(*row, free).neg();
            }
        }
        rows.push(v);
    }
    Subspace::from_spanning(&Matrix::from_rows(field, m.cols, rows))
}

/// The annihilator of `u` inside the dual of the ambient space, with the
/// dual basis identified coordinatewise: all functionals vanishing on `u`.
pub fn annihilator(u: &Subspace) -> Subspace {
    kernel(&u.basis)
}
