//! Semi-free resolutions of cyclic `Ā`-modules over a Koszul DG-ring, built by
//! killing cohomology one degree at a time, and `RHom` computed from them.

use std::collections::BTreeMap;

use super::module::{hom_a, SemiFreeDGModule};
use super::ring::DGRingPresentation;
use crate::complex::{cohomology, CohomologyTable};
use crate::error::{invalid, Error, Result};
use crate::mutation::{self, Mutant};
use crate::ring::module::ModuleInvariants;
use crate::ring::{Coefficients, RingSpec, Value};

/// Size limits for resolution building.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_basis: 256 }
    }
}

/// A semi-free `P → Ā/(c̄)` inducing isomorphisms on `H^i` for every `i ≥ floor`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: SemiFreeDGModule,
    /// `Ā/(c̄)`.
    pub target: RingSpec,
    pub floor: i64,
    /// Basis elements adjoined per degree, as `(degree, count)`.
    pub adjoined: Vec<(i64, usize)>,
}

impl Resolution {
    /// Recompute `H(P)` and confirm it matches `Ā/(c̄)` in degrees `≥ floor`.
    pub fn certify(&self) -> Result<()> {
        let h = cohomology(&self.module.underlying_complex());
        for (&i, g) in &h.groups {
            if i >= self.floor && i != 0 {
                return Err(Error::Invariant(format!("resolution has H^{i} = {g}")));
            }
        }
        let h0 = h.get(0);
        if h0.factors != vec![self.target.modulus_or_zero()] {
            return Err(Error::Invariant(format!("resolution has H^0 = {h0}")));
        }
        Ok(())
    }

    pub fn num_adjoined(&self) -> usize {
        self.adjoined.iter().map(|x| x.1).sum()
    }
}

/// Resolve `Ā/(c̄)` down to degree `floor ≤ 0`.
pub fn resolve_cyclic(
    a: &DGRingPresentation,
    c: &Value,
    floor: i64,
    budget: Budget,
) -> Result<Resolution> {
    if floor > 0 {
        return invalid("resolution floor must be ≤ 0");
    }
    let h0 = a.h0()?;
    let base = a.base();
    let c = base.reduce(c);
    let Some(target) = h0.ring.quotient_by(&c) else {
        return invalid(format!("{c} is a unit in {}", h0.ring));
    };
    let mut p = SemiFreeDGModule::free(a, 0);
    if !h0.ring.is_zero(&c) {
        p = p.adjoin("c", -1, &layout_scalar(&p, 0, &c))?;
    }
    let stop = if mutation::is_active(Mutant::WindowOffByOne) { floor + 1 } else { floor };
    let mut adjoined = Vec::new();
    let mut transcript = Vec::new();
    for n in (stop..0).rev() {
        let h = p.underlying_complex().cohomology_at(n);
        let count = h.generators.cols;
        for j in 0..count {
            if p.basis().len() >= budget.max_basis {
                return Err(Error::ResourceLimit {
                    reason: format!("resolution needs more than {} basis elements", budget.max_basis),
                    transcript,
                });
            }
            p = p.adjoin(&format!("x{}_{j}", -(n - 1)), n - 1, &h.generators.column(j))?;
        }
        transcript.push(format!("degree {n}: killed {count} classes"));
        if count > 0 {
            adjoined.push((n - 1, count));
        }
    }
    Ok(Resolution { module: p, target, floor, adjoined })
}

/// Coordinates of `c·e₀` in the degree-0 layout of a module whose first basis element is `e₀`.
fn layout_scalar(p: &SemiFreeDGModule, deg: i64, c: &Value) -> Vec<Value> {
    let base = p.ring().base();
    p.layout(deg)
        .iter()
        .map(|&(s, b)| if s == 0 && b == 0 { c.clone() } else { base.zero() })
        .collect()
}

/// A resolution of `Ā` over `A` valid in degrees `≥ t`.
pub fn tate_resolution(a: &DGRingPresentation, t: i64) -> Result<Resolution> {
    resolve_cyclic(a, &a.base().zero(), t, Budget::default())
}

/// `H^i RHom_A(Ā/(c̄), M)` for `i` in a window, as `Ā`-modules.
#[derive(Clone, Debug)]
pub struct RHomTable {
    pub table: CohomologyTable,
    pub window: (i64, i64),
    /// Resolution floor used; the window is exact because `floor ≤ inf(M) − max(window)`.
    pub floor: i64,
}

/// Floor making `H^i Hom_A(P_t, M)` exact for `i ≤ hi`: the basis elements a
/// deeper resolution would add sit in degrees `≤ t − 2`, and they only affect
/// `H^i` for `i ≥ inf(M) − t + 1`.
pub fn certified_floor(inf_m: i64, hi: i64) -> i64 {
    (inf_m - hi).min(0)
}

pub fn rhom_cyclic(
    a: &DGRingPresentation,
    c: &Value,
    m: &SemiFreeDGModule,
    window: (i64, i64),
    budget: Budget,
) -> Result<RHomTable> {
    let h0 = a.h0()?;
    let (lo, hi) = window;
    if lo > hi {
        return invalid("empty window");
    }
    let hm = cohomology(&m.underlying_complex());
    let Some(inf_m) = hm.inf() else {
        let table = CohomologyTable { ring: h0.ring, groups: BTreeMap::new() };
        return Ok(RHomTable { table, window, floor: 0 });
    };
    let floor = certified_floor(inf_m, hi);
    let res = resolve_cyclic(a, c, floor, budget)?;
    let hom = hom_a(&res.module, m)?;
    let mut groups = BTreeMap::new();
    for i in lo..=hi {
        let g = hom.cohomology_at(i).invariants;
        if !g.is_zero() {
            groups.insert(i, ModuleInvariants { ring: h0.ring.clone(), factors: g.factors });
        }
    }
    Ok(RHomTable { table: CohomologyTable { ring: h0.ring, groups }, window, floor })
}

/// `H^i RHom_A(Ā, M)` for `i` in `window`.
pub fn rhom_from_h0(
    a: &DGRingPresentation,
    m: &SemiFreeDGModule,
    window: (i64, i64),
) -> Result<RHomTable> {
    rhom_cyclic(a, &a.base().zero(), m, window, Budget::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::ring::koszul_dg_ring;

    fn kos(base: RingSpec, a: &[i64]) -> DGRingPresentation {
        koszul_dg_ring(base, a.iter().map(|&x| Value::int(x)).collect()).unwrap()
    }

    #[test]
    fn ordinary_ring_needs_nothing() {
        let a = DGRingPresentation::ordinary(RingSpec::Integers);
        let r = tate_resolution(&a, -5).unwrap();
        assert_eq!(r.num_adjoined(), 0);
        r.certify().unwrap();
    }

    #[test]
    fn regular_element_needs_nothing() {
        let a = kos(RingSpec::Integers, &[2]);
        let r = tate_resolution(&a, -5).unwrap();
        assert_eq!(r.num_adjoined(), 0);
        r.certify().unwrap();
    }

    #[test]
    fn zero_divisor_needs_variables() {
        let a = kos(RingSpec::integers_mod(4).unwrap(), &[2]);
        let r = tate_resolution(&a, -4).unwrap();
        assert!(r.num_adjoined() > 0);
        assert_eq!(r.adjoined[0].0, -2);
        r.certify().unwrap();
        let deeper = tate_resolution(&a, -5).unwrap();
        let h = cohomology(&r.module.underlying_complex());
        let h2 = cohomology(&deeper.module.underlying_complex());
        for i in -4..=0 {
            assert_eq!(h.get(i), h2.get(i));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = kos(RingSpec::integers_mod(4).unwrap(), &[2]);
        let e = resolve_cyclic(&a, &Value::int(0), -20, Budget { max_basis: 3 }).unwrap_err();
        match e {
            Error::ResourceLimit { transcript, .. } => assert!(!transcript.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rhom_over_ordinary_ring_is_identity() {
        let z = RingSpec::Integers;
        let a = DGRingPresentation::ordinary(z.clone());
        let m = SemiFreeDGModule::cone_of_scalar(&a, &Value::int(6));
        let t = rhom_from_h0(&a, &m, (-2, 2)).unwrap();
        assert_eq!(t.table, cohomology(&m.underlying_complex()));
        let zero = SemiFreeDGModule::zero(&a);
        assert!(rhom_from_h0(&a, &zero, (-2, 2)).unwrap().table.is_zero());
    }

    #[test]
    fn rhom_over_koszul_of_regular_element() {
        // Kos(ℤ;2) ≃ ℤ/2, so RHom_A(ℤ/2, A) is ℤ/2 in degree 0
        let a = kos(RingSpec::Integers, &[2]);
        let t = rhom_from_h0(&a, &SemiFreeDGModule::unit(&a), (0, 2)).unwrap();
        assert_eq!(t.table.get(0).factors, vec![Value::int(2)]);
        assert!(t.table.get(1).is_zero());
        assert!(t.table.get(2).is_zero());
    }
}
