//! Injective, flat and projective dimension through prime-quotient criteria.

mod ext;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

pub use ext::{
    ext_cyclic, ext_into_cyclic, ext_table, resolution_is_periodic, tor_cyclic, tor_table,
};

use crate::complex::{cohomology, cyclic_resolution, CohomologyTable, FreeComplex};
use crate::dg::{rhom_cyclic, Budget, DGRingPresentation, SemiFreeDGModule};
use crate::error::Result;
use crate::local::stable::table_from_factors;
use crate::ring::module::{module_invariants, ModulePresentation};
use crate::ring::{Coefficients, RingSpec, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimKind {
    Injective,
    Flat,
    Projective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum DimValue {
    MinusInfinity,
    Finite(i64),
    ExceedsCutoff(i64),
}

impl DimValue {
    /// The order `−∞ < n < ExceedsCutoff`; `None` when the answer is not certified.
    pub fn compare(&self, other: &DimValue) -> Option<Ordering> {
        use DimValue::*;
        match (self, other) {
            (MinusInfinity, MinusInfinity) => Some(Ordering::Equal),
            (MinusInfinity, _) => Some(Ordering::Less),
            (_, MinusInfinity) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => Some(a.cmp(b)),
            (Finite(_), ExceedsCutoff(_)) => Some(Ordering::Less),
            (ExceedsCutoff(_), _) => None,
        }
    }

    /// `Some(self ≤ other)` when comparable.
    pub fn at_most(&self, other: &DimValue) -> Option<bool> {
        self.compare(other).map(|o| o != Ordering::Greater)
    }
}

impl std::fmt::Display for DimValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimValue::MinusInfinity => write!(f, "-∞"),
            DimValue::Finite(n) => write!(f, "{n}"),
            DimValue::ExceedsCutoff(c) => write!(f, "> cutoff ({c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub prime: String,
    pub degree: i64,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub kind: DimKind,
    pub value: DimValue,
    pub witnesses: Vec<Witness>,
    pub window_used: (i64, i64),
    pub primes_used: Vec<String>,
    /// Resolution floor behind DG computations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_floor: Option<i64>,
}

/// The primes a dimension search runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeInventory {
    pub ring: RingSpec,
    /// Generators; `0` stands for the zero ideal of a domain.
    pub primes: Vec<Value>,
}

impl PrimeInventory {
    /// All primes for quotient rings and fields; for `ℤ`, the primes dividing
    /// some value of `support`, plus the zero ideal, plus `(2)` when a free
    /// summand is present (any maximal ideal sees a free summand the same way).
    pub fn new(ring: &RingSpec, support: &[Value]) -> Self {
        let dom = ring.domain();
        let mut primes = match ring.modulus() {
            Some(m) => dom.prime_factors(&m),
            None if dom.is_field() => Vec::new(),
            None => {
                let mut ps: Vec<Value> = support.iter().flat_map(|v| dom.prime_factors(v)).collect();
                if support.iter().any(|v| dom.is_zero(v)) {
                    ps.push(dom.from_i64(2));
                }
                ps.sort();
                ps.dedup();
                ps
            }
        };
        if ring.is_domain() {
            primes.push(dom.zero());
        }
        PrimeInventory { ring: ring.clone(), primes }
    }

    pub fn with_extra(mut self, extra: &[Value]) -> Self {
        for p in extra {
            if !self.primes.contains(p) {
                self.primes.push(p.clone());
            }
        }
        self
    }

    pub fn labels(&self) -> Vec<String> {
        self.primes.iter().map(|p| format!("({p})")).collect()
    }
}

pub fn support_values(h: &CohomologyTable) -> Vec<Value> {
    h.groups.values().flat_map(|g| g.factors.iter().cloned()).collect()
}

/// Ext or Tor against one cyclic prime quotient, keyed by the dimension index.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    pub prime: Value,
    pub table: CohomologyTable,
    /// Whether nonvanishing at the top of the window may continue forever.
    pub periodic: bool,
}

impl DimensionReport {
    /// The sup of the nonzero indices over all primes.
    pub fn from_tables(kind: DimKind, tables: &[PrimeTable], window: (i64, i64), primes_used: Vec<String>) -> Self {
        assemble(kind, tables, window, primes_used)
    }
}

fn assemble(kind: DimKind, searches: &[PrimeTable], window: (i64, i64), primes_used: Vec<String>) -> DimensionReport {
    let top = searches.iter().filter_map(|s| s.table.sup()).max();
    let exceeds = searches
        .iter()
        .any(|s| s.periodic && s.table.groups.keys().any(|&i| i >= window.1 - 1));
    let value = match top {
        None => DimValue::MinusInfinity,
        Some(_) if exceeds => DimValue::ExceedsCutoff(window.1),
        Some(n) => DimValue::Finite(n),
    };
    let witnesses = match top {
        None => Vec::new(),
        Some(n) => searches
            .iter()
            .filter(|s| s.table.sup() == Some(n))
            .map(|s| Witness { prime: format!("({})", s.prime), degree: n, group: s.table.get(n).label() })
            .collect(),
    };
    DimensionReport { kind, value, witnesses, window_used: window, primes_used, certified_floor: None }
}

fn empty(kind: DimKind) -> DimensionReport {
    DimensionReport {
        kind,
        value: DimValue::MinusInfinity,
        witnesses: Vec::new(),
        window_used: (0, 0),
        primes_used: Vec::new(),
        certified_floor: None,
    }
}

fn ring_search(
    kind: DimKind,
    m: &FreeComplex,
    cutoff: usize,
    extra_primes: &[Value],
) -> Result<DimensionReport> {
    let ring = m.ring();
    let h = cohomology(m);
    let (Some(s), Some(t)) = (h.inf(), h.sup()) else { return Ok(empty(kind)) };
    let c = cutoff as i64;
    let window = match kind {
        DimKind::Injective => (s, t + c),
        DimKind::Flat | DimKind::Projective => (-t, -s + c),
    };
    let inv = PrimeInventory::new(ring, &support_values(&h)).with_extra(extra_primes);
    let mut searches = Vec::new();
    for p in &inv.primes {
        let table = match kind {
            DimKind::Injective => ext_cyclic(ring, p, m, window)?,
            DimKind::Flat => tor_cyclic(ring, p, m, window)?,
            DimKind::Projective => ext_into_cyclic(ring, m, p, window)?,
        };
        // a bounded free complex has finite flat and projective dimension
        let periodic = kind == DimKind::Injective && resolution_is_periodic(ring, p);
        searches.push(PrimeTable { prime: p.clone(), table, periodic });
    }
    Ok(assemble(kind, &searches, window, inv.labels()))
}

pub fn injdim_ring(m: &FreeComplex, cutoff: usize) -> Result<DimensionReport> {
    ring_search(DimKind::Injective, m, cutoff, &[])
}

pub fn flatdim_ring(m: &FreeComplex, cutoff: usize) -> Result<DimensionReport> {
    ring_search(DimKind::Flat, m, cutoff, &[])
}

pub fn projdim_ring(m: &FreeComplex, cutoff: usize) -> Result<DimensionReport> {
    ring_search(DimKind::Projective, m, cutoff, &[])
}

/// As the ring variants, with extra primes added to the inventory.
pub fn dimension_with_primes(
    kind: DimKind,
    m: &FreeComplex,
    cutoff: usize,
    extra: &[Value],
) -> Result<DimensionReport> {
    ring_search(kind, m, cutoff, extra)
}

fn module_search(kind: DimKind, p: &ModulePresentation, cutoff: usize) -> Result<DimensionReport> {
    let ring = &p.ring;
    let inv = module_invariants(p);
    if inv.is_zero() {
        return Ok(empty(kind));
    }
    let primes = PrimeInventory::new(ring, &inv.factors);
    let window = (0, cutoff as i64);
    let len = cutoff + 3;
    let mut searches = Vec::new();
    for q in &primes.primes {
        let mut groups: BTreeMap<i64, Vec<Value>> = BTreeMap::new();
        let mut periodic = false;
        for d in &inv.factors {
            // summand R/(d); every Ext/Tor here is computed over a quotient ring
            let (res_of, over) = match kind {
                DimKind::Projective => (d, q),
                _ => (q, d),
            };
            let Some(target) = ring.quotient_by(over) else { continue };
            periodic |= resolution_is_periodic(ring, res_of);
            let f = cyclic_resolution(ring, res_of, len).reduce_into(&target)?;
            let unit = FreeComplex::single(target.clone(), 0, 1);
            let t = match kind {
                DimKind::Flat => tor_table(&f, &unit, window)?,
                _ => ext_table(&f, &unit, window)?,
            };
            for (&i, g) in &t.groups {
                groups.entry(i).or_default().extend(g.factors.iter().cloned());
            }
        }
        let table = table_from_factors(ring, groups);
        searches.push(PrimeTable { prime: q.clone(), table, periodic });
    }
    Ok(assemble(kind, &searches, window, primes.labels()))
}

pub fn injdim_module(p: &ModulePresentation, cutoff: usize) -> Result<DimensionReport> {
    module_search(DimKind::Injective, p, cutoff)
}

pub fn flatdim_module(p: &ModulePresentation, cutoff: usize) -> Result<DimensionReport> {
    module_search(DimKind::Flat, p, cutoff)
}

pub fn projdim_module(p: &ModulePresentation, cutoff: usize) -> Result<DimensionReport> {
    module_search(DimKind::Projective, p, cutoff)
}

/// `injdim_A(M) = injdim_Ā(RHom_A(Ā, M))`, evaluated prime by prime through
/// `RHom_Ā(Ā/p̄, RHom_A(Ā, M)) ≅ RHom_A(Ā/p̄, M)`.
pub fn injdim_dg(a: &DGRingPresentation, m: &SemiFreeDGModule, cutoff: usize) -> Result<DimensionReport> {
    if a.is_ordinary() {
        return injdim_ring(&m.underlying_complex(), cutoff);
    }
    let h0 = a.h0()?;
    let h = cohomology(&m.underlying_complex());
    let (Some(s), Some(t)) = (h.inf(), h.sup()) else { return Ok(empty(DimKind::Injective)) };
    let window = (s, t + cutoff as i64);
    let inv = PrimeInventory::new(&h0.ring, &support_values(&h));
    let mut searches = Vec::new();
    let mut floor = 0;
    for p in &inv.primes {
        let r = rhom_cyclic(a, p, m, window, Budget::default())?;
        floor = floor.min(r.floor);
        // DG resolutions carry no periodicity certificate
        searches.push(PrimeTable { prime: p.clone(), table: r.table, periodic: true });
    }
    let mut report = assemble(DimKind::Injective, &searches, window, inv.labels());
    report.certified_floor = Some(floor);
    Ok(report)
}

/// `flatdim_A(M) = flatdim_Ā(Ā ⊗^L_A M)`.
pub fn flatdim_dg(a: &DGRingPresentation, m: &SemiFreeDGModule, cutoff: usize) -> Result<DimensionReport> {
    if a.is_ordinary() {
        return flatdim_ring(&m.underlying_complex(), cutoff);
    }
    flatdim_ring(&m.tensor_with_h0()?, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::koszul_dg_ring;
    use crate::ring::matrix::Matrix;

    fn ints(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::int(x)).collect()
    }

    fn cyc(ring: &RingSpec, d: i64) -> ModulePresentation {
        ModulePresentation::cyclic(ring.clone(), Value::int(d))
    }

    #[test]
    fn ring_examples() {
        let z = RingSpec::Integers;
        let r = injdim_ring(&FreeComplex::single(z.clone(), 0, 1), 4).unwrap();
        assert_eq!(r.value, DimValue::Finite(1));
        assert!(injdim_ring(&FreeComplex::zero(z.clone()), 4).unwrap().value == DimValue::MinusInfinity);
        let two = FreeComplex::from_differentials(z.clone(), -1, vec![Matrix::from_i64(z.clone(), 1, 1, &[2])]).unwrap();
        let f = flatdim_ring(&two, 4).unwrap();
        assert_eq!(f.value, DimValue::Finite(1));
        assert_eq!(f.witnesses[0].prime, "(2)");
        assert_eq!(projdim_ring(&two, 4).unwrap().value, DimValue::Finite(1));
        let shifted = FreeComplex::single(z.clone(), -2, 3);
        assert_eq!(flatdim_ring(&shifted, 4).unwrap().value, DimValue::Finite(2));
        assert_eq!(projdim_ring(&FreeComplex::single(z.clone(), 0, 2), 4).unwrap().value, DimValue::Finite(0));

        let z4 = RingSpec::integers_mod(4).unwrap();
        assert_eq!(injdim_ring(&FreeComplex::single(z4.clone(), 0, 1), 4).unwrap().value, DimValue::Finite(0));
    }

    #[test]
    fn module_examples() {
        let z = RingSpec::Integers;
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert_eq!(injdim_module(&cyc(&z4, 0), 5).unwrap().value, DimValue::Finite(0));
        assert_eq!(flatdim_module(&cyc(&z, 2), 5).unwrap().value, DimValue::Finite(1));
        assert_eq!(projdim_module(&cyc(&z, 2), 5).unwrap().value, DimValue::Finite(1));
        assert_eq!(flatdim_module(&cyc(&z4, 2), 5).unwrap().value, DimValue::ExceedsCutoff(5));
        assert_eq!(projdim_module(&cyc(&z4, 2), 5).unwrap().value, DimValue::ExceedsCutoff(5));
        assert_eq!(injdim_module(&cyc(&z4, 2), 5).unwrap().value, DimValue::ExceedsCutoff(5));
        assert_eq!(injdim_module(&cyc(&z, 3), 5).unwrap().value, DimValue::Finite(1));
        assert_eq!(projdim_module(&ModulePresentation::free(z4, 2), 5).unwrap().value, DimValue::Finite(0));
        assert_eq!(injdim_module(&cyc(&z, 1), 5).unwrap().value, DimValue::MinusInfinity);
    }

    #[test]
    fn ordering() {
        use DimValue::*;
        assert_eq!(MinusInfinity.at_most(&Finite(-3)), Some(true));
        assert_eq!(Finite(2).at_most(&Finite(1)), Some(false));
        assert_eq!(Finite(2).at_most(&ExceedsCutoff(5)), Some(true));
        assert_eq!(ExceedsCutoff(5).at_most(&ExceedsCutoff(5)), None);
        assert_eq!(ExceedsCutoff(5).at_most(&Finite(9)), None);
    }

    #[test]
    fn dg_reductions() {
        let a = DGRingPresentation::ordinary(RingSpec::Integers);
        let m = SemiFreeDGModule::unit(&a);
        assert_eq!(injdim_dg(&a, &m, 4).unwrap(), injdim_ring(&m.underlying_complex(), 4).unwrap());

        let k = koszul_dg_ring(RingSpec::Integers, ints(&[2])).unwrap();
        let unit = SemiFreeDGModule::unit(&k);
        // Kos(ℤ;2) ≃ 𝔽₂, and 𝔽₂ is self-injective
        assert_eq!(injdim_dg(&k, &unit, 4).unwrap().value, DimValue::Finite(0));
        assert_eq!(flatdim_dg(&k, &unit, 4).unwrap().value, DimValue::Finite(0));
        assert_eq!(flatdim_dg(&k, &SemiFreeDGModule::zero(&k), 4).unwrap().value, DimValue::MinusInfinity);

        let k4 = koszul_dg_ring(RingSpec::integers_mod(4).unwrap(), ints(&[2])).unwrap();
        let unit4 = SemiFreeDGModule::unit(&k4);
        assert_eq!(flatdim_dg(&k4, &unit4, 4).unwrap().value, DimValue::Finite(0));
    }
}
