use std::collections::BTreeMap;

use super::{cohomology, ComplexMap, FreeComplex};
use crate::error::{invalid, Error, Result};
use crate::ring::matrix::Matrix;
use crate::ring::smith::smith_domain;
use crate::ring::Coefficients;

/// A complex with no unit entries in its differentials, homotopy equivalent to the input.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: FreeComplex,
    /// `complex → original`.
    pub inclusion: ComplexMap,
    /// `original → complex`.
    pub projection: ComplexMap,
}

fn first_unit(c: &FreeComplex) -> Option<(i64, usize, usize)> {
    for (&i, d) in c.differentials() {
        for r in 0..d.rows {
            for col in 0..d.cols {
                if c.ring().is_unit(d.get(r, col)) {
                    return Some((i, r, col));
                }
            }
        }
    }
    None
}

fn drop_row(m: &Matrix, r: usize) -> Matrix {
    let top = m.row_range(0..r);
    let bottom = m.row_range(r + 1..m.rows);
    top.vcat(&bottom)
}

fn drop_col(m: &Matrix, c: usize) -> Matrix {
    drop_row(&m.transpose(), c).transpose()
}

/// Split off contractible summands `R --u--> R` (u a unit) until none remain.
///
/// Over a local ring the result is the minimal complex; in general it only
/// guarantees that no differential has a unit entry.
pub fn minimize(c: &FreeComplex) -> Minimized {
    let ring = c.ring().clone();
    let mut cur = c.clone();
    let mut incl: BTreeMap<i64, Matrix> =
        c.ranks().iter().map(|(&i, &r)| (i, Matrix::identity(ring.clone(), r))).collect();
    let mut proj = incl.clone();
    while let Some((i, r, col)) = first_unit(&cur) {
        let d = cur.d(i);
        let phi_inv = ring.inverse(d.get(r, col)).expect("pivot is a unit");
        let delta = drop_col(&d.row_range(r..r + 1), col); // 1 × (n_i − 1)
        let gamma = drop_row(&d.columns(col..col + 1), r); // (n_{i+1} − 1) × 1
        let rest = drop_col(&drop_row(&d, r), col);
        let corr = gamma.mul(&delta).scale(&phi_inv);
        let new_d = rest.add(&corr.neg());

        let mut ranks = cur.ranks().clone();
        *ranks.get_mut(&i).unwrap() -= 1;
        *ranks.get_mut(&(i + 1)).unwrap() -= 1;
        let mut diffs = cur.differentials().clone();
        diffs.insert(i, new_d);
        if let Some(prev) = diffs.get(&(i - 1)).cloned() {
            diffs.insert(i - 1, drop_row(&prev, col));
        }
        if let Some(next) = diffs.get(&(i + 1)).cloned() {
            diffs.insert(i + 1, drop_col(&next, r));
        }

        // degree i: x ↦ (x with slot col = −φ⁻¹ δ x); degree i+1: insert 0 at slot r
        let n_i = cur.rank(i);
        let mut s_i = Matrix::zeros(ring.clone(), n_i, n_i - 1);
        for k in 0..n_i - 1 {
            let slot = if k < col { k } else { k + 1 };
            s_i.set(slot, k, ring.one());
            s_i.set(col, k, ring.neg(&ring.mul(&phi_inv, delta.get(0, k))));
        }
        let ii = incl.get(&i).unwrap().mul(&s_i);
        incl.insert(i, ii);
        let ii1 = drop_col(incl.get(&(i + 1)).unwrap(), r);
        incl.insert(i + 1, ii1);

        // degree i: forget slot col; degree i+1: y ↦ y_{≠r} − γ φ⁻¹ y_r
        let pi = drop_row(proj.get(&i).unwrap(), col);
        proj.insert(i, pi);
        let n1 = cur.rank(i + 1);
        let mut t = Matrix::zeros(ring.clone(), n1 - 1, n1);
        for k in 0..n1 - 1 {
            let slot = if k < r { k } else { k + 1 };
            t.set(k, slot, ring.one());
            t.set(k, r, ring.neg(&ring.mul(gamma.get(k, 0), &phi_inv)));
        }
        let pi1 = t.mul(proj.get(&(i + 1)).unwrap());
        proj.insert(i + 1, pi1);

        cur = FreeComplex::from_parts_unchecked(ring.clone(), ranks, diffs);
    }
    let inclusion = ComplexMap::new_unchecked(cur.clone(), c.clone(), incl);
    let projection = ComplexMap::new_unchecked(c.clone(), cur.clone(), proj);
    Minimized { complex: cur, inclusion, projection }
}

/// `C' → C → C'' → C'[1]` with `H(C') = H^{>inf}(C)` and `H(C'') = H^{inf}(C)`.
#[derive(Clone, Debug)]
pub struct TruncationTriangle {
    /// `C'`, carrying the cohomology above `inf`.
    pub upper: FreeComplex,
    /// `C''`, carrying `H^{inf}` in degree `inf`.
    pub lower: FreeComplex,
    /// Degreewise split inclusion `C' → C`.
    pub inclusion: ComplexMap,
    /// `C → C''`, whose composite with `inclusion` is zero.
    pub projection: ComplexMap,
}

/// Split a complex of amplitude ≥ 1 into pieces of smaller amplitude.
///
/// Supported over domains (smart truncation, whose edge modules are free) and
/// over local artinian rings (brutal truncation of the minimal complex, whose
/// support equals its cohomological range). Other quotient rings are rejected.
pub fn truncation_triangle(c: &FreeComplex) -> Result<TruncationTriangle> {
    let h = cohomology(c);
    let (Some(s), Some(amp)) = (h.inf(), h.amp()) else {
        return invalid("truncation of an acyclic complex");
    };
    if amp == 0 {
        return invalid("truncation needs amplitude ≥ 1");
    }
    let ring = c.ring().clone();
    if ring.is_domain() {
        return Ok(smart_split(c, s));
    }
    let m = ring.modulus().expect("quotient ring");
    if ring.domain().prime_factors(&m).len() != 1 {
        return Err(Error::UnsupportedInstance(format!(
            "truncation triangle over the non-local ring {ring}"
        )));
    }
    let min = minimize(c);
    let mc = &min.complex;
    let (lo, _) = mc.support().expect("non-acyclic");
    if lo != s {
        return Err(Error::Invariant(format!("minimal complex starts at {lo}, inf is {s}")));
    }
    let mut ranks = mc.ranks().clone();
    ranks.remove(&lo);
    let mut diffs = mc.differentials().clone();
    diffs.remove(&lo);
    let upper = FreeComplex::from_parts_unchecked(ring.clone(), ranks.clone(), diffs);
    let lower = FreeComplex::single(ring.clone(), lo, mc.rank(lo));
    let incl_comps: BTreeMap<i64, Matrix> = ranks
        .keys()
        .map(|&i| (i, min.inclusion.component(i)))
        .collect();
    let mut proj_comps = BTreeMap::new();
    proj_comps.insert(lo, min.projection.component(lo));
    Ok(TruncationTriangle {
        inclusion: ComplexMap::new(upper.clone(), c.clone(), incl_comps)?,
        projection: ComplexMap::new(c.clone(), lower.clone(), proj_comps)?,
        upper,
        lower,
    })
}

fn smart_split(c: &FreeComplex, s: i64) -> TruncationTriangle {
    let ring = c.ring().clone();
    let d = c.d(s);
    let sd = smith_domain(&d.lift());
    let r = sd.rank();
    let n = c.rank(s);
    let v = sd.v.into_ring(&ring);
    // V is unimodular, so its Smith form is the identity and V⁻¹ = V₂·U₂
    let sv = smith_domain(&sd.v);
    let v_inv = sv.v.mul(&sv.u).into_ring(&ring);
    let w = v.columns(0..r);
    let to_z = v_inv.row_range(r..n);

    let mut up_ranks = BTreeMap::new();
    let mut up_diffs = BTreeMap::new();
    let mut incl = BTreeMap::new();
    let mut low_ranks = BTreeMap::new();
    let mut low_diffs = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for (&i, &k) in c.ranks() {
        if i > s {
            up_ranks.insert(i, k);
            up_diffs.insert(i, c.d(i));
            incl.insert(i, Matrix::identity(ring.clone(), k));
        } else if i < s {
            low_ranks.insert(i, k);
            if i < s - 1 {
                low_diffs.insert(i, c.d(i));
            }
            proj.insert(i, Matrix::identity(ring.clone(), k));
        }
    }
    up_ranks.insert(s, r);
    up_diffs.insert(s, d.mul(&w));
    incl.insert(s, w);
    low_ranks.insert(s, n - r);
    low_diffs.insert(s - 1, to_z.mul(&c.d(s - 1)));
    proj.insert(s, to_z);
    let upper = FreeComplex::from_parts_unchecked(ring.clone(), up_ranks, up_diffs);
    let lower = FreeComplex::from_parts_unchecked(ring, low_ranks, low_diffs);
    TruncationTriangle {
        inclusion: ComplexMap::new_unchecked(upper.clone(), c.clone(), incl),
        projection: ComplexMap::new_unchecked(c.clone(), lower.clone(), proj),
        upper,
        lower,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{cone, tensor};
    use crate::ring::RingSpec;
    use super::*;

    fn check(c: &FreeComplex) -> TruncationTriangle {
        let t = truncation_triangle(c).unwrap();
        let h = cohomology(c);
        let (hu, hl) = (cohomology(&t.upper), cohomology(&t.lower));
        assert!(hu.amp().unwrap_or(0) < h.amp().unwrap());
        assert!(hl.amp().unwrap_or(0) < h.amp().unwrap());
        assert!(hu.inf().is_none_or(|i| i >= h.inf().unwrap()));
        assert!(hl.inf().is_none_or(|i| i >= h.inf().unwrap()));
        assert_eq!(cohomology(&cone(&t.inclusion)), hl);
        ComplexMap::new(t.upper.clone(), c.clone(), t.inclusion.components().clone()).unwrap();
        ComplexMap::new(c.clone(), t.lower.clone(), t.projection.components().clone()).unwrap();
        assert!(t.projection.compose_after(&t.inclusion).unwrap().components().values().all(|m| m.is_zero()));
        t
    }

    #[test]
    fn integers_two_degrees() {
        let z = RingSpec::Integers;
        // ℤ --2--> ℤ in degrees −1, 0 plus ℤ/3 in degree 1
        let a = FreeComplex::from_differentials(z.clone(), -1, vec![Matrix::from_i64(z.clone(), 1, 1, &[2])]).unwrap();
        let b = FreeComplex::from_differentials(z.clone(), 0, vec![Matrix::from_i64(z.clone(), 1, 1, &[3])]).unwrap();
        let c = a.direct_sum(&b).unwrap();
        let t = check(&c);
        assert_eq!(cohomology(&t.lower).groups.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(cohomology(&t.upper).groups.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn koszul_over_z8() {
        let z8 = RingSpec::integers_mod(8).unwrap();
        let k = FreeComplex::from_differentials(z8.clone(), -1, vec![Matrix::from_i64(z8.clone(), 1, 1, &[2])]).unwrap();
        let kk = tensor(&k, &k).unwrap();
        check(&kk);
    }

    #[test]
    fn minimize_removes_units() {
        let z4 = RingSpec::integers_mod(4).unwrap();
        let d = Matrix::from_i64(z4.clone(), 2, 2, &[1, 2, 2, 2]);
        let c = FreeComplex::from_differentials(z4.clone(), 0, vec![d]).unwrap();
        let m = minimize(&c);
        assert_eq!(m.complex.total_rank(), 2);
        assert_eq!(cohomology(&m.complex), cohomology(&c));
        ComplexMap::new(m.complex.clone(), c.clone(), m.inclusion.components().clone()).unwrap();
        ComplexMap::new(c, m.complex.clone(), m.projection.components().clone()).unwrap();
    }

    #[test]
    fn non_local_rejected() {
        let z6 = RingSpec::integers_mod(6).unwrap();
        let a = FreeComplex::from_differentials(z6.clone(), -1, vec![Matrix::from_i64(z6.clone(), 1, 1, &[2])]).unwrap();
        assert!(matches!(truncation_triangle(&a), Err(Error::UnsupportedInstance(_))));
    }
}
