//! Smith normal form over a Euclidean domain, with transforms.
//!
//! Pivot rule: smallest nonzero Euclidean norm in the active block, ties broken
//! by lowest row and then lowest column, so outputs are reproducible.

use super::matrix::{DomainMatrix, Matrix};
use super::{Coefficients, Domain, RingSpec, Value};
use crate::error::{invalid, Result};
use crate::mutation::{self, Mutant};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: DomainMatrix,
    /// Inverse of `u`; its columns give generators adapted to `d`.
    pub u_inv: DomainMatrix,
    pub d: DomainMatrix,
    pub v: DomainMatrix,
    /// Nonzero diagonal entries of `D` in order, each normalized.
    pub invariant_factors: Vec<Value>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form of a matrix over ℤ, 𝔽_p or ℚ.
///
/// Quotient rings are not accepted: callers lift to the covering domain and
/// append the modulus relations, then use [`smith_domain`].
pub fn smith_normal_form(a: &Matrix<RingSpec>) -> Result<SmithDecomposition> {
    if !a.ring.is_domain() {
        return invalid(format!(
            "smith_normal_form needs a Euclidean domain, got {}; lift to {:?} first",
            a.ring,
            a.ring.domain()
        ));
    }
    Ok(smith_domain(&a.lift()))
}

pub fn smith_domain(a: &DomainMatrix) -> SmithDecomposition {
    let mut w = Worker::new(a.clone(), true, true);
    w.run();
    w.finish()
}

/// Diagonal only, for invariant-factor computations.
pub fn invariant_factors(a: &DomainMatrix) -> Vec<Value> {
    let mut w = Worker::new(a.clone(), false, false);
    w.run();
    w.finish().invariant_factors
}

struct Worker {
    dom: Domain,
    a: DomainMatrix,
    u: Option<DomainMatrix>,
    u_inv: Option<DomainMatrix>,
    v: Option<DomainMatrix>,
}

impl Worker {
    fn new(a: DomainMatrix, want_u: bool, want_v: bool) -> Self {
        let dom = a.ring.clone();
        let u = want_u.then(|| Matrix::identity(dom.clone(), a.rows));
        let u_inv = u.clone();
        let v = want_v.then(|| Matrix::identity(dom.clone(), a.cols));
        Worker { dom, a, u, u_inv, v }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                m.entries.swap(i * m.cols + c, j * m.cols + c);
            }
        }
        if let Some(m) = self.u_inv.as_mut() {
            for r in 0..m.rows {
                m.entries.swap(r * m.cols + i, r * m.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
            for r in 0..m.rows {
                m.entries.swap(r * m.cols + i, r * m.cols + j);
            }
        }
    }

    /// row_dst += q · row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &Value) {
        let dom = self.dom.clone();
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                let s = m.get(src, c);
                if dom.is_zero(s) {
                    continue;
                }
                let v = dom.add(m.get(dst, c), &dom.mul(q, s));
                m.set(dst, c, v);
            }
        }
        if let Some(m) = self.u_inv.as_mut() {
            for r in 0..m.rows {
                let s = m.get(r, dst);
                if dom.is_zero(s) {
                    continue;
                }
                let v = dom.sub(m.get(r, src), &dom.mul(q, s));
                m.set(r, src, v);
            }
        }
    }

    /// col_dst += q · col_src
    fn add_col(&mut self, dst: usize, src: usize, q: &Value) {
        let dom = self.dom.clone();
        for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
            for r in 0..m.rows {
                let s = m.get(r, src);
                if dom.is_zero(s) {
                    continue;
                }
                let v = dom.add(m.get(r, dst), &dom.mul(q, s));
                m.set(r, dst, v);
            }
        }
    }

    fn scale_row(&mut self, i: usize, unit: &Value) {
        let dom = self.dom.clone();
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                let v = dom.mul(unit, m.get(i, c));
                m.set(i, c, v);
            }
        }
        if let Some(m) = self.u_inv.as_mut() {
            let inv = dom.inverse(unit).expect("row scaling by a unit");
            for r in 0..m.rows {
                let v = dom.mul(&inv, m.get(r, i));
                m.set(r, i, v);
            }
        }
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_norm = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if self.dom.is_zero(x) {
                    continue;
                }
                let n = self.dom.norm(x);
                if best_norm.as_ref().is_none_or(|b| n < *b) {
                    best_norm = Some(n);
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let steps = self.a.rows.min(self.a.cols);
        for t in 0..steps {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if self.clear_column(t) || self.clear_row(t) {
                    // a remainder became the new smallest entry; re-pivot
                    let (pi, pj) = self.pivot(t).expect("nonzero block");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                if mutation::is_active(Mutant::SkipDivisibility) {
                    break;
                }
                match self.non_divisible(t) {
                    Some(i) => {
                        let one = self.dom.one();
                        self.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            let (_, unit) = self.dom.normalize(self.a.get(t, t));
            if unit != self.dom.one() {
                self.scale_row(t, &unit);
            }
        }
    }

    /// Reduce column t below the pivot; true if a nonzero remainder remains.
    fn clear_column(&mut self, t: usize) -> bool {
        let mut dirty = false;
        for i in t + 1..self.a.rows {
            if self.dom.is_zero(self.a.get(i, t)) {
                continue;
            }
            let (q, r) = self.dom.div_rem(self.a.get(i, t), self.a.get(t, t));
            let q = self.dom.neg(&q);
            self.add_row(i, t, &q);
            if !self.dom.is_zero(&r) {
                dirty = true;
            }
        }
        dirty
    }

    fn clear_row(&mut self, t: usize) -> bool {
        let mut dirty = false;
        for j in t + 1..self.a.cols {
            if self.dom.is_zero(self.a.get(t, j)) {
                continue;
            }
            let (q, r) = self.dom.div_rem(self.a.get(t, j), self.a.get(t, t));
            let q = self.dom.neg(&q);
            self.add_col(j, t, &q);
            if !self.dom.is_zero(&r) {
                dirty = true;
            }
        }
        dirty
    }

    fn non_divisible(&self, t: usize) -> Option<usize> {
        let p = self.a.get(t, t);
        for i in t + 1..self.a.rows {
            for j in t + 1..self.a.cols {
                if !self.dom.divides(p, self.a.get(i, j)) {
                    return Some(i);
                }
            }
        }
        None
    }

    fn finish(self) -> SmithDecomposition {
        let n = self.a.rows.min(self.a.cols);
        let invariant_factors = (0..n)
            .map(|i| self.a.get(i, i).clone())
            .filter(|x| !self.dom.is_zero(x))
            .collect();
        let dom = self.dom.clone();
        SmithDecomposition {
            u: self.u.unwrap_or_else(|| Matrix::zeros(dom.clone(), 0, 0)),
            u_inv: self.u_inv.unwrap_or_else(|| Matrix::zeros(dom.clone(), 0, 0)),
            v: self.v.unwrap_or_else(|| Matrix::zeros(dom.clone(), 0, 0)),
            d: self.a,
            invariant_factors,
        }
    }
}

/// Generators of `{x : A·x = 0}` over the domain (columns of the result).
pub fn domain_kernel(a: &DomainMatrix) -> DomainMatrix {
    let s = smith_domain(a);
    let r = s.rank();
    s.v.columns(r..a.cols)
}

/// Solve `A·x = b` over the domain; `None` if no solution exists.
pub fn domain_solve(s: &SmithDecomposition, b: &[Value]) -> Option<Vec<Value>> {
    let dom = s.d.ring.clone();
    let ub = s.u.mul_vec(b);
    let r = s.rank();
    let mut y = vec![dom.zero(); s.d.cols];
    for (i, x) in ub.iter().enumerate() {
        if i < r {
            y[i] = dom.exact_div(x, s.d.get(i, i))?;
        } else if !dom.is_zero(x) {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Generators of the kernel of `A` over its (possibly quotient) ring, as columns.
///
/// Over ℤ/n and 𝔽_p[x]/(f) the matrix is lifted and the modulus relations are
/// appended, so the result spans `{x : A·x ≡ 0}`.
pub fn kernel_presentation(a: &Matrix<RingSpec>) -> Matrix<RingSpec> {
    let ring = &a.ring;
    let lifted = a.lift();
    let k = match ring.modulus() {
        None => domain_kernel(&lifted),
        Some(m) => {
            let aug = lifted.hcat(&Matrix::identity(ring.domain(), a.rows).scale(&m));
            domain_kernel(&aug).row_range(0..a.cols)
        }
    };
    let reduced = k.into_ring(ring);
    let cols: Vec<Vec<Value>> = (0..reduced.cols)
        .map(|j| reduced.column(j))
        .filter(|c| c.iter().any(|x| !ring.is_zero(x)))
        .collect();
    Matrix::from_columns(ring.clone(), a.cols, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: usize, cols: usize, e: &[i64]) -> Matrix<RingSpec> {
        Matrix::from_i64(RingSpec::Integers, rows, cols, e)
    }

    fn check(a: &Matrix<RingSpec>) -> SmithDecomposition {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(s.u.mul(&a.lift()).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(Domain::Integers, a.rows));
        s
    }

    #[test]
    fn identity_case() {
        let s = check(&Matrix::identity(RingSpec::Integers, 3));
        assert_eq!(s.invariant_factors, vec![Value::int(1); 3]);
    }

    #[test]
    fn diag_two_three() {
        let s = check(&z(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.invariant_factors, vec![Value::int(1), Value::int(6)]);
    }

    #[test]
    fn gcd_and_determinant() {
        let s = check(&z(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.invariant_factors, vec![Value::int(2), Value::int(4)]);
    }

    #[test]
    fn rejects_quotient_rings() {
        let a = Matrix::from_i64(RingSpec::integers_mod(4).unwrap(), 1, 1, &[2]);
        assert!(smith_normal_form(&a).is_err());
    }

    #[test]
    fn kernels() {
        let k = kernel_presentation(&Matrix::zeros(RingSpec::Integers, 2, 2));
        assert_eq!(k.cols, 2);
        let z4 = RingSpec::integers_mod(4).unwrap();
        let k = kernel_presentation(&Matrix::from_i64(z4, 1, 1, &[2]));
        assert_eq!(k.cols, 1);
        assert_eq!(k.get(0, 0), &Value::int(2));
        let k = kernel_presentation(&z(1, 1, &[2]));
        assert_eq!(k.cols, 0);
    }

    #[test]
    fn polynomial_snf() {
        let d = Domain::Polynomials(2);
        let x = Value::Poly(super::super::Poly(vec![0, 1]));
        let x1 = Value::Poly(super::super::Poly(vec![1, 1]));
        let a = Matrix::diagonal(d.clone(), 2, 2, &[x.clone(), x1.clone()]);
        let s = smith_domain(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert!(d.is_unit(&s.invariant_factors[0]));
        assert_eq!(s.invariant_factors[1], d.mul(&x, &x1));
    }
}
