//! Bounded cochain complexes of finite free modules over a supported ring.
//!
//! Grading is cohomological: `d^i : C^i → C^{i+1}` is a `rank(i+1) × rank(i)`
//! matrix acting on column vectors.

mod ops;
mod resolution;
mod truncate;

pub use ops::{cone, hom_complex, hom_maps, shift, tensor, tensor_maps};
pub use resolution::cyclic_resolution;
pub use truncate::{minimize, truncation_triangle, Minimized, TruncationTriangle};

use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};
use crate::ring::matrix::Matrix;
use crate::ring::module::{subquotient, ModuleInvariants, ModulePresentation, Subquotient};
use crate::ring::smith::kernel_presentation;
use crate::ring::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: RingSpec,
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl FreeComplex {
    /// Validating constructor: shapes must match and `d∘d = 0`.
    pub fn new(
        ring: RingSpec,
        ranks: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let ranks: BTreeMap<i64, usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let mut clean = BTreeMap::new();
        for (i, d) in diffs {
            let want = (rank_in(&ranks, i + 1), rank_in(&ranks, i));
            if d.ring != ring {
                return invalid(format!("differential d^{i} is over {}, complex over {ring}", d.ring));
            }
            if d.shape() != want {
                return invalid(format!(
                    "differential d^{i} has shape {:?}, expected {:?}",
                    d.shape(),
                    want
                ));
            }
            if !d.is_zero() {
                clean.insert(i, d);
            }
        }
        let c = FreeComplex { ring, ranks, diffs: clean };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn zero(ring: RingSpec) -> Self {
        FreeComplex { ring, ranks: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// `R^rank` concentrated in degree `deg`.
    pub fn single(ring: RingSpec, deg: i64, rank: usize) -> Self {
        let mut ranks = BTreeMap::new();
        ranks.insert(deg, rank);
        FreeComplex::new(ring, ranks, BTreeMap::new()).unwrap()
    }

    /// Consecutive differentials starting at degree `lo`: `C^lo → C^{lo+1} → …`.
    pub fn from_differentials(ring: RingSpec, lo: i64, ds: Vec<Matrix>) -> Result<Self> {
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (k, d) in ds.into_iter().enumerate() {
            let i = lo + k as i64;
            for (deg, r) in [(i, d.cols), (i + 1, d.rows)] {
                if let Some(&old) = ranks.get(&deg) {
                    if old != r {
                        return invalid(format!("inconsistent rank in degree {deg}"));
                    }
                }
                ranks.insert(deg, r);
            }
            diffs.insert(i, d);
        }
        FreeComplex::new(ring, ranks, diffs)
    }

    pub(crate) fn from_parts_unchecked(
        ring: RingSpec,
        ranks: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Self {
        let ranks = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let diffs = diffs.into_iter().filter(|(_, d)| !d.is_zero()).collect();
        FreeComplex { ring, ranks, diffs }
    }

    fn check_square_zero(&self) -> Result<()> {
        for (&i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::Invariant(format!("d^{} ∘ d^{i} ≠ 0", i + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self, i: i64) -> usize {
        rank_in(&self.ranks, i)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    /// Nonzero differentials only.
    pub fn differentials(&self) -> &BTreeMap<i64, Matrix> {
        &self.diffs
    }

    /// `d^i`, a zero matrix of the right shape when absent.
    pub fn d(&self, i: i64) -> Matrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.ring.clone(), self.rank(i + 1), self.rank(i)))
    }

    /// Lowest and highest degrees with a nonzero module.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Entrywise base change along `ring → target` (same covering domain).
    pub fn reduce_into(&self, target: &RingSpec) -> Result<FreeComplex> {
        let mut diffs = BTreeMap::new();
        for (&i, d) in &self.diffs {
            diffs.insert(i, d.reduce_into(target)?);
        }
        Ok(FreeComplex::from_parts_unchecked(target.clone(), self.ranks.clone(), diffs))
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> Result<FreeComplex> {
        same_ring(&self.ring, &other.ring)?;
        let mut ranks = self.ranks.clone();
        for (&i, &r) in &other.ranks {
            *ranks.entry(i).or_insert(0) += r;
        }
        let degs: Vec<i64> = ranks.keys().copied().collect();
        let mut diffs = BTreeMap::new();
        for i in degs {
            diffs.insert(i, self.d(i).direct_sum(&other.d(i)));
        }
        Ok(FreeComplex::from_parts_unchecked(self.ring.clone(), ranks, diffs))
    }

    /// Cocycles `Z^i`, as columns.
    pub fn cocycles(&self, i: i64) -> Matrix {
        if self.rank(i) == 0 {
            return Matrix::zeros(self.ring.clone(), 0, 0);
        }
        match self.diffs.get(&i) {
            Some(d) => kernel_presentation(d),
            None => Matrix::identity(self.ring.clone(), self.rank(i)),
        }
    }

    /// Coboundaries `B^i`, as columns.
    pub fn coboundaries(&self, i: i64) -> Matrix {
        self.d(i - 1)
    }

    /// `H^i` together with cocycle representatives of its cyclic summands.
    pub fn cohomology_at(&self, i: i64) -> Subquotient {
        subquotient(&self.cocycles(i), &self.coboundaries(i))
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.keys().all(|&i| self.cohomology_at(i).invariants.is_zero())
    }
}

fn rank_in(ranks: &BTreeMap<i64, usize>, i: i64) -> usize {
    ranks.get(&i).copied().unwrap_or(0)
}

pub(crate) fn same_ring(a: &RingSpec, b: &RingSpec) -> Result<()> {
    if a != b {
        return invalid(format!("ring mismatch: {a} vs {b}"));
    }
    Ok(())
}

/// Cohomology modules of a complex with the inf/sup/amp bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub ring: RingSpec,
    /// Nonzero cohomology only.
    pub groups: BTreeMap<i64, ModuleInvariants>,
}

impl CohomologyTable {
    pub fn get(&self, i: i64) -> ModuleInvariants {
        self.groups.get(&i).cloned().unwrap_or_else(|| ModuleInvariants::zero(self.ring.clone()))
    }

    /// Cyclic-decomposition presentation of `H^i`.
    pub fn presentation(&self, i: i64) -> ModulePresentation {
        self.get(i).presentation()
    }

    pub fn inf(&self) -> Option<i64> {
        self.groups.keys().next().copied()
    }

    pub fn sup(&self) -> Option<i64> {
        self.groups.keys().next_back().copied()
    }

    pub fn amp(&self) -> Option<i64> {
        Some(self.sup()? - self.inf()?)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// One line per nonzero degree, e.g. `H^0 = ℤ/2`.
    pub fn summary(&self) -> String {
        if self.groups.is_empty() {
            return "0".into();
        }
        self.groups
            .iter()
            .map(|(i, g)| format!("H^{i} = {g}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn cohomology(c: &FreeComplex) -> CohomologyTable {
    let groups = c
        .ranks
        .keys()
        .filter_map(|&i| {
            let h = c.cohomology_at(i).invariants;
            (!h.is_zero()).then_some((i, h))
        })
        .collect();
    CohomologyTable { ring: c.ring.clone(), groups }
}

/// A degree-0 chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    components: BTreeMap<i64, Matrix>,
}

impl ComplexMap {
    /// Validating constructor: shapes and `d∘f = f∘d` are checked exactly.
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        components: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        same_ring(&source.ring, &target.ring)?;
        for (&i, f) in &components {
            if f.shape() != (target.rank(i), source.rank(i)) {
                return invalid(format!("map component in degree {i} has shape {:?}", f.shape()));
            }
        }
        let m = ComplexMap { source, target, components };
        let degs: Vec<i64> = m.source.ranks.keys().copied().collect();
        for i in degs {
            let lhs = m.target.d(i).mul(&m.component(i));
            let rhs = m.component(i + 1).mul(&m.source.d(i));
            if lhs != rhs {
                return Err(Error::Invariant(format!("map does not commute with d in degree {i}")));
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: FreeComplex,
        target: FreeComplex,
        components: BTreeMap<i64, Matrix>,
    ) -> Self {
        ComplexMap { source, target, components }
    }

    pub fn identity(c: &FreeComplex) -> Self {
        let comps = c.ranks.iter().map(|(&i, &r)| (i, Matrix::identity(c.ring.clone(), r))).collect();
        ComplexMap { source: c.clone(), target: c.clone(), components: comps }
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Self {
        ComplexMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn component(&self, i: i64) -> Matrix {
        self.components.get(&i).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.source.ring.clone(), self.target.rank(i), self.source.rank(i))
        })
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.components
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &ComplexMap) -> Result<ComplexMap> {
        if first.target != self.source {
            return invalid("composition of non-composable maps");
        }
        let comps = first
            .source
            .ranks
            .keys()
            .map(|&i| (i, self.component(i).mul(&first.component(i))))
            .collect();
        Ok(ComplexMap::new_unchecked(first.source.clone(), self.target.clone(), comps))
    }

    /// Image of `H^i(source) → H^i(target)`.
    pub fn image_in_cohomology(&self, i: i64) -> ModuleInvariants {
        let z = self.source.cocycles(i);
        let f = self.component(i);
        let img = if z.cols == 0 || f.cols == 0 {
            Matrix::zeros(self.target.ring.clone(), self.target.rank(i), 0)
        } else {
            f.mul(&z)
        };
        subquotient(&img, &self.target.coboundaries(i)).invariants
    }
}

/// `f` is a quasi-isomorphism iff its cone is acyclic.
pub fn is_quasi_iso(f: &ComplexMap) -> bool {
    cone(f).is_acyclic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Value;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn two_term(ring: RingSpec, lo: i64, a: i64) -> FreeComplex {
        FreeComplex::from_differentials(ring.clone(), lo, vec![Matrix::from_i64(ring, 1, 1, &[a])])
            .unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = Matrix::from_i64(z(), 1, 1, &[1]);
        assert!(FreeComplex::from_differentials(z(), 0, vec![d.clone(), d]).is_err());
    }

    #[test]
    fn cohomology_of_multiplication_by_two() {
        let c = two_term(z(), -1, 2);
        let h = cohomology(&c);
        assert_eq!(h.get(0).factors, vec![Value::int(2)]);
        assert!(h.get(-1).is_zero());
        assert_eq!((h.inf(), h.sup(), h.amp()), (Some(0), Some(0), Some(0)));
    }

    #[test]
    fn identity_complex_is_acyclic() {
        let c = two_term(z(), 0, 1);
        assert!(cohomology(&c).is_zero());
        assert_eq!(cohomology(&c).amp(), None);
    }

    #[test]
    fn single_module() {
        let h = cohomology(&FreeComplex::single(z(), 3, 2));
        assert_eq!(h.get(3).free_rank(), 2);
        assert_eq!(h.amp(), Some(0));
    }

    #[test]
    fn quasi_isos() {
        let c = two_term(z(), -1, 2);
        assert!(is_quasi_iso(&ComplexMap::identity(&c)));
        assert!(!is_quasi_iso(&ComplexMap::zero(&c, &c)));
        // Kos(ℤ;2) → ℤ/2 lifted to ℤ: compare with a second resolution of ℤ/2
        let other = FreeComplex::from_differentials(
            z(),
            -1,
            vec![Matrix::from_i64(z(), 2, 2, &[2, 0, 0, 1])],
        )
        .unwrap();
        let mut comps = BTreeMap::new();
        comps.insert(-1, Matrix::from_i64(z(), 2, 1, &[1, 0]));
        comps.insert(0, Matrix::from_i64(z(), 2, 1, &[1, 0]));
        let f = ComplexMap::new(c, other, comps).unwrap();
        assert!(is_quasi_iso(&f));
    }

    #[test]
    fn noncommuting_map_rejected() {
        let c = two_term(z(), -1, 2);
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::from_i64(z(), 1, 1, &[1]));
        assert!(ComplexMap::new(c.clone(), c, comps).is_err());
    }
}
