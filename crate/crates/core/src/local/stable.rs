use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::telescope::{build_telescope, ReducedTelescope};
use crate::complex::{
    cohomology, cyclic_resolution, hom_complex, hom_maps, tensor, tensor_maps, CohomologyTable,
    ComplexMap, FreeComplex,
};
use crate::dg::{hom_a, tensor_base_complex, DGRingPresentation, SemiFreeDGModule};
use crate::error::{invalid, Result};
use crate::ring::module::ModuleInvariants;
use crate::ring::{Coefficients, RingSpec, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Stability {
    Stable { at_order: usize },
    Unstable { cutoff: usize, trajectory: Vec<String> },
}

/// A finite witness for a filtered colimit or limit of cohomology tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizedCohomology {
    /// The table at the stable order, or at the cutoff.
    pub table: CohomologyTable,
    pub status: Stability,
    /// Tables at orders `1..`, as far as they were computed.
    pub history: Vec<CohomologyTable>,
}

impl StabilizedCohomology {
    pub fn is_stable(&self) -> bool {
        matches!(self.status, Stability::Stable { .. })
    }

    /// Degrees with nonzero cohomology, if they no longer move.
    ///
    /// For an unstable result this asks that the last three orders agree on
    /// which degrees are nonzero.
    pub fn settled_support(&self) -> Option<BTreeSet<i64>> {
        if self.is_stable() {
            return Some(self.table.groups.keys().copied().collect());
        }
        let n = self.history.len();
        if n < 3 {
            return None;
        }
        let sets: Vec<BTreeSet<i64>> =
            self.history[n - 3..].iter().map(|t| t.groups.keys().copied().collect()).collect();
        (sets[0] == sets[1] && sets[1] == sets[2]).then(|| sets[2].clone())
    }
}

/// Run `table_at` on orders `1, 2, …` until three consecutive tables agree.
pub fn stabilize(
    cutoff: usize,
    mut table_at: impl FnMut(usize) -> Result<CohomologyTable>,
) -> Result<StabilizedCohomology> {
    if cutoff < 3 {
        return invalid("stabilization needs a cutoff of at least 3");
    }
    let mut history: Vec<CohomologyTable> = Vec::new();
    for m in 1..=cutoff {
        history.push(table_at(m)?);
        let n = history.len();
        if n >= 3 && history[n - 3] == history[n - 2] && history[n - 2] == history[n - 1] {
            return Ok(StabilizedCohomology {
                table: history[n - 3].clone(),
                status: Stability::Stable { at_order: m - 2 },
                history,
            });
        }
    }
    let n = history.len();
    let trajectory = history[n - 3..].iter().map(|t| t.summary()).collect();
    Ok(StabilizedCohomology {
        table: history[n - 1].clone(),
        status: Stability::Unstable { cutoff, trajectory },
        history,
    })
}

fn image_table(f: &ComplexMap) -> CohomologyTable {
    let mut groups = BTreeMap::new();
    for &i in f.source.ranks().keys() {
        let g = f.image_in_cohomology(i);
        if !g.is_zero() {
            groups.insert(i, g);
        }
    }
    CohomologyTable { ring: f.target.ring().clone(), groups }
}

/// Image of `H(R_m ⊗ X) → H(R_{2m} ⊗ X)`: the part of `H(Tel_m ⊗ X)` that survives
/// into the colimit, once `2m` is past the torsion exponents.
pub fn torsion_image(ring: &RingSpec, lifts: &[Value], x: &FreeComplex, m: usize) -> Result<CohomologyTable> {
    let r = ReducedTelescope::new(ring, lifts, m)?;
    let r2 = ReducedTelescope::new(ring, lifts, 2 * m)?;
    let f = tensor_maps(&r.transition(&r2)?, &ComplexMap::identity(x))?;
    Ok(image_table(&f))
}

/// Image of `H Hom(R_{2m}, X) → H Hom(R_m, X)`.
pub fn completion_image(ring: &RingSpec, lifts: &[Value], x: &FreeComplex, m: usize) -> Result<CohomologyTable> {
    let r = ReducedTelescope::new(ring, lifts, m)?;
    let r2 = ReducedTelescope::new(ring, lifts, 2 * m)?;
    let f = hom_maps(&r.transition(&r2)?, &ComplexMap::identity(x))?;
    Ok(image_table(&f))
}

/// `H(RΓ_a X)` for a bounded free complex over `ring`.
pub fn torsion_colimit(ring: &RingSpec, lifts: &[Value], x: &FreeComplex, cutoff: usize) -> Result<StabilizedCohomology> {
    stabilize(cutoff, |m| torsion_image(ring, lifts, x, m))
}

/// `H(LΛ_a X)` for a bounded free complex over `ring`.
pub fn completion_limit(ring: &RingSpec, lifts: &[Value], x: &FreeComplex, cutoff: usize) -> Result<StabilizedCohomology> {
    stabilize(cutoff, |m| completion_image(ring, lifts, x, m))
}

/// `RΓ` of a formal complex `⊕ H^i[−i]` given by a table: each cyclic summand
/// `R/(d)` is handled as the free module over `R/(d)`.
pub fn torsion_colimit_of_table(
    table: &CohomologyTable,
    lifts: &[Value],
    cutoff: usize,
) -> Result<StabilizedCohomology> {
    stabilize(cutoff, |m| {
        let mut groups: BTreeMap<i64, Vec<Value>> = BTreeMap::new();
        for (&i, g) in &table.groups {
            for d in &g.factors {
                let Some(rd) = table.ring.quotient_by(d) else { continue };
                let t = torsion_image(&rd, lifts, &FreeComplex::single(rd.clone(), i, 1), m)?;
                for (&j, h) in &t.groups {
                    groups.entry(j).or_default().extend(h.factors.iter().cloned());
                }
            }
        }
        Ok(table_from_factors(&table.ring, groups))
    })
}

pub(crate) fn table_from_factors(ring: &RingSpec, groups: BTreeMap<i64, Vec<Value>>) -> CohomologyTable {
    let groups = groups
        .into_iter()
        .filter_map(|(i, fs)| {
            let inv = canonical_invariants(ring, &fs);
            (!inv.is_zero()).then_some((i, inv))
        })
        .collect();
    CohomologyTable { ring: ring.clone(), groups }
}

/// Invariant factors of `⊕ D/(f)`.
pub(crate) fn canonical_invariants(ring: &RingSpec, fs: &[Value]) -> ModuleInvariants {
    let n = fs.len();
    let diag: Vec<Value> = fs.iter().map(|f| ring.reduce(f)).collect();
    let rel = crate::ring::matrix::Matrix::diagonal(ring.clone(), n, n, &diag);
    crate::ring::module::module_invariants(
        &crate::ring::module::ModulePresentation::new(n, rel).expect("square presentation"),
    )
}

fn check_lifts(a: &DGRingPresentation, lifts: &[Value]) -> Result<Vec<Value>> {
    if lifts.is_empty() {
        return invalid("need at least one lift");
    }
    Ok(lifts.iter().map(|x| a.base().reduce(x)).collect())
}

/// `Tel_m(A⁰; a) ⊗_{A⁰} M`.
pub fn rgamma(a: &DGRingPresentation, lifts: &[Value], m: &SemiFreeDGModule, order: usize) -> Result<FreeComplex> {
    let lifts = check_lifts(a, lifts)?;
    let t = build_telescope(a.base(), &lifts, order)?;
    tensor(&t.complex, &m.underlying_complex())
}

pub fn rgamma_stabilized(
    a: &DGRingPresentation,
    lifts: &[Value],
    m: &SemiFreeDGModule,
    cutoff: usize,
) -> Result<StabilizedCohomology> {
    let lifts = check_lifts(a, lifts)?;
    torsion_colimit(a.base(), &lifts, &m.underlying_complex(), cutoff)
}

/// `Hom_{A⁰}(Tel_m(A⁰; a), M)`.
pub fn llambda(a: &DGRingPresentation, lifts: &[Value], m: &SemiFreeDGModule, order: usize) -> Result<FreeComplex> {
    let lifts = check_lifts(a, lifts)?;
    let t = build_telescope(a.base(), &lifts, order)?;
    hom_complex(&t.complex, &m.underlying_complex())
}

pub fn llambda_stabilized(
    a: &DGRingPresentation,
    lifts: &[Value],
    m: &SemiFreeDGModule,
    cutoff: usize,
) -> Result<StabilizedCohomology> {
    let lifts = check_lifts(a, lifts)?;
    completion_limit(a.base(), &lifts, &m.underlying_complex(), cutoff)
}

/// `Tel_m ⊗_{A⁰} M` and `Hom_{A⁰}(Tel_m, M)` as DG-modules over `A`.
pub fn rgamma_module(
    a: &DGRingPresentation,
    lifts: &[Value],
    m: &SemiFreeDGModule,
    order: usize,
) -> Result<SemiFreeDGModule> {
    let lifts = check_lifts(a, lifts)?;
    let t = build_telescope(a.base(), &lifts, order)?;
    tensor_base_complex(&t.complex, m)
}

pub fn llambda_module(
    a: &DGRingPresentation,
    lifts: &[Value],
    m: &SemiFreeDGModule,
    order: usize,
) -> Result<SemiFreeDGModule> {
    let lifts = check_lifts(a, lifts)?;
    let t = build_telescope(a.base(), &lifts, order)?;
    let dual = hom_complex(&t.complex, &FreeComplex::single(a.base().clone(), 0, 1))?;
    tensor_base_complex(&dual, m)
}

/// Generator of `(a₁^K, …, a_k^K)` in a principal ideal ring.
pub fn power_ideal(ring: &RingSpec, lifts: &[Value], k: u32) -> Value {
    let dom = ring.domain();
    let mut g = ring.modulus_or_zero();
    for a in lifts {
        let mut p = dom.one();
        for _ in 0..k {
            p = dom.mul(&p, a);
        }
        g = dom.gcd(&g, &p);
    }
    g
}

/// Telescope order used at precision `K`.
pub fn precision_order(k: u32, amp: i64) -> usize {
    k as usize + amp.max(0) as usize + 1
}

/// `X ⊗^L R/(g)` through a resolution long enough to be exact in degrees `≥ lo`.
pub fn derived_mod(x: &FreeComplex, g: &Value, lo: i64) -> Result<FreeComplex> {
    let top = x.support().map_or(0, |s| s.1);
    let len = (top - lo + 2).max(1) as usize;
    tensor(x, &cyclic_resolution(x.ring(), g, len))
}

/// `H(LΛ_a X ⊗^L R/(a^K))` as the limit image at the certified order.
///
/// Degrees below `inf(X) − k − 1` are not reported.
pub fn completion_mod_power(ring: &RingSpec, lifts: &[Value], x: &FreeComplex, k: u32) -> Result<CohomologyTable> {
    let h = cohomology(x);
    let (Some(inf), Some(amp)) = (h.inf(), h.amp()) else {
        return Ok(CohomologyTable { ring: ring.clone(), groups: BTreeMap::new() });
    };
    let lo = inf - lifts.len() as i64 - 1;
    let xk = derived_mod(x, &power_ideal(ring, lifts, k), lo)?;
    let mut t = completion_image(ring, lifts, &xk, precision_order(k, amp))?;
    t.groups.retain(|&i, _| i >= lo);
    Ok(t)
}

/// `H(LΛ_ā M ⊗^L A⁰/(a^K))` over the base ring.
pub fn llambda_mod_power(
    a: &DGRingPresentation,
    lifts: &[Value],
    m: &SemiFreeDGModule,
    k: u32,
) -> Result<CohomologyTable> {
    if k == 0 {
        return invalid("precision must be at least 1");
    }
    let lifts = check_lifts(a, lifts)?;
    completion_mod_power(a.base(), &lifts, &m.underlying_complex(), k)
}

/// Greenlees–May adjunction at finite orders: `Hom_A(Tel_m ⊗ M, N)` against
/// `Hom_A(M, Hom(Tel_m, N))` over `window`, for `m = 1..=orders`.
pub fn gm_adjunction_check(
    a: &DGRingPresentation,
    lifts: &[Value],
    m: &SemiFreeDGModule,
    n: &SemiFreeDGModule,
    window: (i64, i64),
    orders: usize,
) -> Result<bool> {
    for order in 1..=orders {
        let left = hom_a(&rgamma_module(a, lifts, m, order)?, n)?;
        let right = hom_a(m, &llambda_module(a, lifts, n, order)?)?;
        for i in window.0..=window.1 {
            if left.cohomology_at(i).invariants != right.cohomology_at(i).invariants {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::koszul_dg_ring;

    fn ints(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::int(x)).collect()
    }

    fn over_z() -> DGRingPresentation {
        DGRingPresentation::ordinary(RingSpec::Integers)
    }

    #[test]
    fn torsion_module_is_fixed() {
        let a = over_z();
        let m = SemiFreeDGModule::cone_of_scalar(&a, &Value::int(8));
        let s = rgamma_stabilized(&a, &ints(&[2]), &m, 8).unwrap();
        assert_eq!(s.status, Stability::Stable { at_order: 3 });
        assert_eq!(s.table.get(0).factors, ints(&[8]));
        assert!(s.table.get(1).is_zero());
        let raised = rgamma_stabilized(&a, &ints(&[2]), &m, 12).unwrap();
        assert_eq!(raised.status, s.status);
    }

    #[test]
    fn integers_do_not_stabilize() {
        let a = over_z();
        let m = SemiFreeDGModule::unit(&a);
        let s = rgamma_stabilized(&a, &ints(&[2]), &m, 8).unwrap();
        match &s.status {
            Stability::Unstable { cutoff, trajectory } => {
                assert_eq!(*cutoff, 8);
                assert_eq!(trajectory, &["H^1 = ℤ/64", "H^1 = ℤ/128", "H^1 = ℤ/256"]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(s.settled_support(), Some([1].into_iter().collect()));
        let order3 = cohomology(&rgamma(&a, &ints(&[2]), &m, 3).unwrap());
        assert_eq!(order3.get(1).factors, ints(&[8]));
        assert!(order3.get(0).is_zero());
    }

    #[test]
    fn trivial_ideals() {
        let a = over_z();
        let m = SemiFreeDGModule::cone_of_scalar(&a, &Value::int(6));
        assert!(rgamma_stabilized(&a, &ints(&[1]), &m, 4).unwrap().table.is_zero());
        let s = rgamma_stabilized(&a, &ints(&[0]), &m, 4).unwrap();
        assert_eq!(s.table, cohomology(&m.underlying_complex()));
        let zero = SemiFreeDGModule::zero(&a);
        let s = rgamma_stabilized(&a, &ints(&[2]), &zero, 4).unwrap();
        assert_eq!(s.status, Stability::Stable { at_order: 1 });
        assert!(s.table.is_zero());
    }

    #[test]
    fn completion_of_torsion_and_integers() {
        let a = over_z();
        let m8 = SemiFreeDGModule::cone_of_scalar(&a, &Value::int(8));
        let s = llambda_stabilized(&a, &ints(&[2]), &m8, 8).unwrap();
        assert!(s.is_stable());
        assert_eq!(s.table.get(0).factors, ints(&[8]));
        assert_eq!(s.table.groups.len(), 1);

        let z = SemiFreeDGModule::unit(&a);
        let per_order = cohomology(&llambda(&a, &ints(&[2]), &z, 4).unwrap());
        assert_eq!(per_order.get(0).factors, ints(&[16]));
        let k3 = llambda_mod_power(&a, &ints(&[2]), &z, 3).unwrap();
        assert_eq!(k3.summary(), "H^0 = ℤ/8");
        let zero = llambda_mod_power(&a, &ints(&[2]), &SemiFreeDGModule::zero(&a), 3).unwrap();
        assert!(zero.is_zero());
        let id = llambda_stabilized(&a, &ints(&[0]), &m8, 5).unwrap();
        assert_eq!(id.table, cohomology(&m8.underlying_complex()));
    }

    #[test]
    fn nilpotent_completion_is_exact() {
        let z4 = RingSpec::integers_mod(4).unwrap();
        let a = DGRingPresentation::ordinary(z4.clone());
        let m = SemiFreeDGModule::unit(&a);
        for k in 2..4 {
            let t = llambda_mod_power(&a, &ints(&[2]), &m, k).unwrap();
            assert_eq!(t, cohomology(&m.underlying_complex()));
        }
    }

    #[test]
    fn table_version_matches_complex_version() {
        let z = RingSpec::Integers;
        let x = FreeComplex::from_differentials(
            z.clone(),
            -1,
            vec![crate::ring::matrix::Matrix::from_i64(z.clone(), 2, 2, &[12, 0, 0, 5])],
        )
        .unwrap();
        let direct = torsion_colimit(&z, &ints(&[2]), &x, 8).unwrap();
        let via_table = torsion_colimit_of_table(&cohomology(&x), &ints(&[2]), 8).unwrap();
        assert_eq!(direct.table, via_table.table);
        assert_eq!(direct.table.get(0).factors, ints(&[4]));
    }

    #[test]
    fn koszul_module_commutes_with_rhom() {
        let a = koszul_dg_ring(RingSpec::integers_mod(8).unwrap(), ints(&[2])).unwrap();
        let m = SemiFreeDGModule::unit(&a);
        let p = crate::dg::resolve_cyclic(&a, &Value::int(0), -3, Default::default()).unwrap();
        for order in 1..4 {
            let lhs = hom_a(&p.module, &rgamma_module(&a, &ints(&[2]), &m, order).unwrap()).unwrap();
            let t = build_telescope(a.base(), &ints(&[2]), order).unwrap();
            let rhs = tensor(&t.complex, &hom_a(&p.module, &m).unwrap()).unwrap();
            assert_eq!(cohomology(&lhs), cohomology(&rhs));
        }
    }

    #[test]
    fn adjunction_holds_at_finite_orders() {
        let a = koszul_dg_ring(RingSpec::Integers, ints(&[4])).unwrap();
        let m = SemiFreeDGModule::unit(&a);
        let n = SemiFreeDGModule::cone_of_scalar(&a, &Value::int(2));
        assert!(gm_adjunction_check(&a, &ints(&[2]), &m, &n, (-3, 3), 2).unwrap());
        let z = SemiFreeDGModule::zero(&a);
        assert!(gm_adjunction_check(&a, &ints(&[2]), &z, &n, (-3, 3), 2).unwrap());
    }
}
