use std::fmt;

use super::{Coefficients, Domain, RingSpec, Value};
use crate::error::{invalid, Result};

/// Dense row-major matrix whose entries are interpreted by a coefficient context.
///
/// `Matrix<RingSpec>` is a matrix over a supported ring; `Matrix<Domain>` is a
/// matrix over a covering Euclidean domain, which is where normal forms live.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<C = RingSpec> {
    pub ring: C,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Value>,
}

pub type DomainMatrix = Matrix<Domain>;

impl<C: Coefficients> Matrix<C> {
    pub fn zeros(ring: C, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix { entries: vec![z; rows * cols], ring, rows, cols }
    }

    pub fn identity(ring: C, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.ring.one();
        }
        m
    }

    pub fn from_entries(ring: C, rows: usize, cols: usize, entries: Vec<Value>) -> Result<Self> {
        if entries.len() != rows * cols {
            return invalid(format!("{} entries for a {rows}×{cols} matrix", entries.len()));
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    pub fn from_i64(ring: C, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        let entries = entries.iter().map(|&n| ring.from_i64(n)).collect();
        Matrix { ring, rows, cols, entries }
    }

    pub fn diagonal(ring: C, rows: usize, cols: usize, diag: &[Value]) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| self.ring.is_zero(a))
    }

    pub fn mul(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let v = self.ring.add(out.get(i, j), &self.ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Value]) -> Vec<Value> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !self.ring.is_zero(a) && !self.ring.is_zero(x) {
                        acc = self.ring.add(&acc, &self.ring.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in matrix sum");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, s: &Value) -> Matrix<C> {
        let entries = self.entries.iter().map(|a| self.ring.mul(s, a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Matrix<C> {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn transpose(&self) -> Matrix<C> {
        let mut out = Matrix::zeros(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Value> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(ring: C, rows: usize, cols: &[Vec<Value>]) -> Matrix<C> {
        let mut m = Matrix::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.rows, other.rows, "row mismatch in hcat");
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Stack `self` over `other`.
    pub fn vcat(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.cols, other.cols, "column mismatch in vcat");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix<C>) -> Matrix<C> {
        let mut out = Matrix::zeros(self.ring.clone(), self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<C>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<C> {
        let mut out = Matrix::zeros(self.ring.clone(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Columns `range` of the matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix<C> {
        self.block(0, range.start, self.rows, range.len())
    }

    /// Rows `range` of the matrix.
    pub fn row_range(&self, range: std::ops::Range<usize>) -> Matrix<C> {
        self.block(range.start, 0, range.len(), self.cols)
    }

    pub fn map_entries<D: Coefficients>(&self, ring: D, f: impl Fn(&Value) -> Value) -> Matrix<D> {
        Matrix {
            entries: self.entries.iter().map(f).collect(),
            ring,
            rows: self.rows,
            cols: self.cols,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Matrix<C>) -> Matrix<C> {
        let mut out = Matrix::zeros(self.ring.clone(), self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if self.ring.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = self.ring.mul(a, other.get(k, l));
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }
}

impl Matrix<RingSpec> {
    /// Lift every entry to its canonical representative in the covering domain.
    pub fn lift(&self) -> DomainMatrix {
        self.map_entries(self.ring.domain(), |v| v.clone())
    }

    /// Entrywise image under the canonical reduction into `target` (same covering domain).
    pub fn reduce_into(&self, target: &RingSpec) -> Result<Matrix<RingSpec>> {
        if target.domain() != self.ring.domain() {
            return invalid(format!("no reduction map {} → {}", self.ring, target));
        }
        Ok(self.map_entries(target.clone(), |v| target.reduce(v)))
    }
}

impl DomainMatrix {
    /// Reduce every entry into `ring` (whose covering domain must be this domain).
    pub fn into_ring(&self, ring: &RingSpec) -> Matrix<RingSpec> {
        debug_assert_eq!(ring.domain(), self.ring);
        self.map_entries(ring.clone(), |v| ring.reduce(v))
    }

    /// Determinant by Euclidean row reduction (unimodular updates and swaps only).
    pub fn determinant(&self) -> Value {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        euclidean_det(self)
    }
}

fn euclidean_det(m: &DomainMatrix) -> Value {
    let d = m.ring.clone();
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = d.one();
    let mut det = d.one();
    for col in 0..n {
        loop {
            // pick the smallest nonzero entry at or below the diagonal
            let piv = (col..n)
                .filter(|&r| !d.is_zero(a.get(r, col)))
                .min_by_key(|&r| d.norm(a.get(r, col)));
            let Some(piv) = piv else { return d.zero() };
            if piv != col {
                for j in 0..n {
                    let t = a.get(piv, j).clone();
                    a.set(piv, j, a.get(col, j).clone());
                    a.set(col, j, t);
                }
                sign = d.neg(&sign);
            }
            let mut done = true;
            for r in col + 1..n {
                if d.is_zero(a.get(r, col)) {
                    continue;
                }
                let (q, rem) = d.div_rem(a.get(r, col), a.get(col, col));
                for j in 0..n {
                    let v = d.sub(a.get(r, j), &d.mul(&q, a.get(col, j)));
                    a.set(r, j, v);
                }
                if !d.is_zero(&rem) {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        det = d.mul(&det, a.get(col, col));
    }
    d.mul(&det, &sign)
}

impl<C: Coefficients> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}[", self.shape())?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = DomainMatrix::from_i64(Domain::Integers, 2, 2, &[2, 4, 6, 8]);
        assert_eq!(m.determinant(), Value::int(-8));
        let m = DomainMatrix::from_i64(Domain::Integers, 3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(m.determinant(), Value::int(-1));
    }

    #[test]
    fn kronecker_shape() {
        let a = DomainMatrix::from_i64(Domain::Integers, 1, 2, &[1, 2]);
        let b = DomainMatrix::from_i64(Domain::Integers, 2, 1, &[3, 4]);
        let k = a.kronecker(&b);
        assert_eq!(k.shape(), (2, 2));
        assert_eq!(k.entries, vec![Value::int(3), Value::int(6), Value::int(4), Value::int(8)]);
    }
}
