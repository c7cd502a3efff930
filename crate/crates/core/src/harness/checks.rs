//! The individual checks. Each returns a [`CheckReport`]; errors and panics
//! inside a check are turned into verdicts by [`guarded`].

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use super::report::{CheckReport, SkipReason};
use super::zoo::{random_module, sampling_rng, Budgets, ZooInstance};
use crate::cache::cached_resolve_cyclic;
use crate::complex::{
    cohomology, cyclic_resolution, hom_complex, tensor, CohomologyTable, ComplexMap, FreeComplex,
};
use crate::dg::resolution::certified_floor;
use crate::dg::{
    dg_tensor, hom_a, rhom_from_h0, tensor_base_complex, Budget,
    DGRingPresentation, SemiFreeDGModule,
};
use crate::dimension::{
    flatdim_dg, flatdim_module, injdim_dg, injdim_module, resolution_is_periodic, support_values,
    tor_cyclic, DimKind, DimValue, DimensionReport, PrimeInventory, PrimeTable,
};
use crate::error::Result;
use crate::json::{matrix_to_json, ring_to_json, value_to_json};
use crate::local::stable::canonical_invariants;
use crate::local::{
    build_telescope, classical_gamma, classical_lambda, completion_image, llambda_mod_power,
    llambda_module, power_ideal, precision_order, telescope_base_change, torsion_colimit,
    torsion_colimit_of_table, StabilizedCohomology,
};
use crate::ring::matrix::Matrix;
use crate::ring::module::{subquotient, ModuleInvariants, ModulePresentation};
use crate::ring::smith::smith_normal_form;
use crate::ring::{Coefficients, Poly, RingSpec, Value};

/// Run a check body, mapping errors and panics to verdicts.
pub(crate) fn guarded(
    check: &str,
    instance: &str,
    witness: impl Fn() -> Json,
    body: impl FnOnce() -> Result<CheckReport>,
) -> CheckReport {
    let start = std::time::Instant::now();
    let mut r = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => CheckReport::from_error(check, instance, witness(), &e),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            CheckReport::fail(check, instance, witness(), format!("panicked: {msg}"))
        }
    };
    r.millis = start.elapsed().as_millis();
    r
}

fn unstable(check: &str, z: &str, which: &str, s: &StabilizedCohomology) -> CheckReport {
    CheckReport::skip(check, z, SkipReason::Unstable, format!("{which}: {:?}", s.status))
}

fn same_module(ring: &RingSpec, a: &ModuleInvariants, b: &ModuleInvariants) -> bool {
    canonical_invariants(ring, &a.factors) == canonical_invariants(ring, &b.factors)
}

/// First degree in `lo..=hi` where the tables differ, as a readable string.
fn table_mismatch(ring: &RingSpec, a: &CohomologyTable, b: &CohomologyTable, lo: i64, hi: i64) -> Option<String> {
    (lo..=hi).find_map(|i| {
        let (x, y) = (a.get(i), b.get(i));
        (!same_module(ring, &x, &y)).then(|| format!("degree {i}: {} vs {}", x.label(), y.label()))
    })
}

fn lifts_bar(z: &ZooInstance) -> Result<(RingSpec, Vec<Value>)> {
    let h0 = z.dg_ring.h0()?;
    let lifts = z.ideal_lifts.iter().map(|x| h0.ring.reduce(x)).collect();
    Ok((h0.ring, lifts))
}

fn inf_sup(m: &SemiFreeDGModule) -> Option<(i64, i64)> {
    let h = cohomology(&m.underlying_complex());
    Some((h.inf()?, h.sup()?))
}

fn window_only(t: &CohomologyTable, lo: i64, hi: i64) -> CohomologyTable {
    let mut t = t.clone();
    t.groups.retain(|&i, _| lo <= i && i <= hi);
    t
}

/// `RΓ` commutes with `RHom_A(Ā, −)`: the left side applies `RΓ` over `Ā` to
/// the `RHom` table, the right side takes `Hom_A(P, −)` of `M` and applies
/// `RΓ` over `A⁰`.
pub fn check_rgamma_rhom(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "rgamma_rhom_iso";
    let d = z.digest();
    let a = &z.dg_ring;
    let cutoff = z.budgets.cutoff;
    let Some((s, t)) = inf_sup(&z.module) else {
        return Ok(CheckReport::pass(NAME, &d, "M is acyclic"));
    };
    let (abar, lifts) = lifts_bar(z)?;
    let hi = t + 2;
    let table = rhom_from_h0(a, &z.module, (s, hi))?.table;
    let left = torsion_colimit_of_table(&table, &lifts, cutoff)?;
    if !left.is_stable() {
        return Ok(unstable(NAME, &d, "left", &left));
    }
    let p = cached_resolve_cyclic(a, &a.base().zero(), certified_floor(s, hi + 1), Budget::default())?;
    let right = torsion_colimit(a.base(), &z.ideal_lifts, &hom_a(&p.module, &z.module)?, cutoff)?;
    if !right.is_stable() {
        return Ok(unstable(NAME, &d, "right", &right));
    }
    Ok(match table_mismatch(&abar, &left.table, &right.table, s, hi) {
        None => CheckReport::pass(NAME, &d, format!("agree on [{s}, {hi}]: {}", left.table.summary())),
        Some(m) => CheckReport::fail(NAME, &d, z.to_json(), m),
    })
}

fn prime_inventory(z: &ZooInstance) -> Result<PrimeInventory> {
    let (abar, lifts) = lifts_bar(z)?;
    let h = cohomology(&z.module.underlying_complex());
    Ok(PrimeInventory::new(&abar, &support_values(&h)).with_extra(&lifts_primes(&abar, &lifts)))
}

fn compare_dims(name: &str, z: &ZooInstance, left: &DimensionReport, right: &DimensionReport) -> CheckReport {
    let d = z.digest();
    let detail = format!("{} ≤ {}", left.value, right.value);
    match left.value.at_most(&right.value) {
        Some(true) => CheckReport::pass(name, &d, detail),
        Some(false) => CheckReport::fail(name, &d, z.to_json(), format!("violated: {detail}")),
        None => CheckReport::skip(name, &d, SkipReason::ExceedsCutoff, detail),
    }
}

/// `injdim(RΓ M) ≤ injdim(M)`, with `Ext(Ā/p̄, RΓ M) = RΓ Ext(Ā/p̄, M)`
/// computed prime by prime.
pub fn check_injdim_rgamma(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "injdim_rgamma_inequality";
    let d = z.digest();
    let a = &z.dg_ring;
    let cutoff = z.budgets.cutoff;
    let right = injdim_dg(a, &z.module, cutoff)?;
    let Some((s, t)) = inf_sup(&z.module) else {
        return Ok(compare_dims(NAME, z, &right, &right));
    };
    let hi = t + z.ideal_lifts.len() as i64 + cutoff as i64;
    let inv = prime_inventory(z)?;
    let mut tables = Vec::new();
    for p in &inv.primes {
        let res = cached_resolve_cyclic(a, p, certified_floor(s, hi + 1), Budget::default())?;
        let st = torsion_colimit(a.base(), &z.ideal_lifts, &hom_a(&res.module, &z.module)?, cutoff)?;
        if !st.is_stable() {
            return Ok(unstable(NAME, &d, &format!("prime ({p})"), &st));
        }
        let periodic = if a.is_ordinary() { resolution_is_periodic(a.base(), p) } else { true };
        tables.push(PrimeTable { prime: p.clone(), table: window_only(&st.table, s, hi), periodic });
    }
    let left = DimensionReport::from_tables(DimKind::Injective, &tables, (s, hi), inv.labels());
    Ok(compare_dims(NAME, z, &left, &right))
}

/// `Ā ⊗ LΛ(M)` against `LΛ^Ā(Ā ⊗ M)` at matched telescope orders, reduced
/// modulo `ā^K` for each precision `K`.
pub fn check_llambda_base_change(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "llambda_base_change_iso";
    let d = z.digest();
    let a = &z.dg_ring;
    if inf_sup(&z.module).is_none() {
        return Ok(CheckReport::pass(NAME, &d, "M is acyclic"));
    }
    let (abar, lifts) = lifts_bar(z)?;
    let x = z.module.tensor_with_h0()?;
    let lo = z.module.degree_range().map_or(0, |r| r.0) - 1;
    for k in 1..=z.budgets.precision {
        let order = k as usize;
        let g = power_ideal(&abar, &lifts, k);
        let tel = build_telescope(&abar, &lifts, order)?;
        let left = cohomology(&derived_mod_checked(&hom_complex(&tel.complex, &x)?, &g, lo)?);
        let y = llambda_module(a, &z.ideal_lifts, &z.module, order)?.tensor_with_h0()?;
        let right = cohomology(&derived_mod_checked(&y, &g, lo)?);
        let hi = left.sup().max(right.sup()).unwrap_or(lo);
        if let Some(m) = table_mismatch(&abar, &left, &right, lo, hi) {
            return Ok(CheckReport::fail(NAME, &d, z.to_json(), format!("K = {k}, {m}")));
        }
    }
    Ok(CheckReport::pass(NAME, &d, format!("K = 1..{}", z.budgets.precision)))
}

/// `derived_mod`, with the result re-validated so a broken sign cannot hide.
fn derived_mod_checked(x: &FreeComplex, g: &Value, lo: i64) -> Result<FreeComplex> {
    let c = crate::local::derived_mod(&validated(x)?, g, lo)?;
    validated(&c)
}

fn validated(c: &FreeComplex) -> Result<FreeComplex> {
    FreeComplex::new(c.ring().clone(), c.ranks().clone(), c.differentials().clone())
}

/// `flatdim(LΛ M) ≤ flatdim(M)`; the left side is `flatdim_Ā` of
/// `LΛ^Ā(Ā ⊗ M)`, whose Tor against `Ā/p̄` is `Λ` of the Tor groups.
pub fn check_flatdim_llambda(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "flatdim_llambda_inequality";
    let d = z.digest();
    let a = &z.dg_ring;
    let cutoff = z.budgets.cutoff;
    let right = flatdim_dg(a, &z.module, cutoff)?;
    let x = validated(&z.module.tensor_with_h0()?)?;
    let hx = cohomology(&x);
    let (Some(s), Some(t)) = (hx.inf(), hx.sup()) else {
        return Ok(compare_dims(NAME, z, &right, &right));
    };
    let (abar, lifts) = lifts_bar(z)?;
    let window = (-t, -s + cutoff as i64);
    let inv = PrimeInventory::new(&abar, &support_values(&hx));
    let mut pattern: Option<BTreeSet<(usize, i64)>> = None;
    let mut tables = Vec::new();
    let tors: Vec<CohomologyTable> =
        inv.primes.iter().map(|p| tor_cyclic(&abar, p, &x, window)).collect::<Result<_>>()?;
    for k in 1..=z.budgets.precision {
        tables.clear();
        let mut seen = BTreeSet::new();
        for (pi, (p, tor)) in inv.primes.iter().zip(&tors).enumerate() {
            let mut groups = BTreeMap::new();
            for (&i, g) in &tor.groups {
                let lam = classical_lambda(&g.presentation(), &lifts, k).module;
                if !lam.is_zero() {
                    seen.insert((pi, i));
                    groups.insert(i, lam);
                }
            }
            let table = CohomologyTable { ring: abar.clone(), groups };
            tables.push(PrimeTable { prime: p.clone(), table, periodic: false });
        }
        if pattern.as_ref().is_some_and(|q| *q != seen) {
            return Ok(CheckReport::skip(NAME, &d, SkipReason::Unstable, format!("ladder moves at K = {k}")));
        }
        pattern = Some(seen);
    }
    let left = DimensionReport::from_tables(DimKind::Flat, &tables, window, inv.labels());
    Ok(compare_dims(NAME, z, &left, &right))
}

/// Key for checks that only depend on the DG-ring and the ideal.
pub(crate) fn ring_key(z: &ZooInstance) -> Json {
    json!({
        "dg_ring": crate::json::dg_ring_to_json(&z.dg_ring),
        "ideal_lifts": z.ideal_lifts.iter().map(value_to_json).collect::<Vec<_>>(),
    })
}

/// `Tor_i(Ā/p̄, LΛ(A)) = 0` for `i > 0`, through `LΛ^Ā(Ā/p̄)` on a long
/// enough resolution, at each precision of the ladder.
pub fn check_completion_tor_vanishing(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "completion_of_ring_flat";
    let d = z.digest();
    let (abar, lifts) = lifts_bar(z)?;
    let cutoff = z.budgets.cutoff as i64;
    let len = z.budgets.cutoff + lifts.len() + 3;
    let inv = PrimeInventory::new(&abar, &[abar.domain().zero()]).with_extra(&lifts_primes(&abar, &lifts));
    for p in &inv.primes {
        let f = cyclic_resolution(&abar, p, len);
        for k in 1..=z.budgets.precision {
            let t = completion_image(&abar, &lifts, &f, precision_order(k, 0))?;
            if let Some((&i, g)) = t.groups.range(-cutoff..0).next() {
                return Ok(CheckReport::fail(
                    NAME,
                    &d,
                    z.to_json(),
                    format!("Tor_{} against ({p}) is {} at K = {k}", -i, g.label()),
                ));
            }
        }
    }
    Ok(CheckReport::pass(NAME, &d, format!("primes {}", inv.labels().join(" "))))
}

fn lifts_primes(ring: &RingSpec, lifts: &[Value]) -> Vec<Value> {
    let dom = ring.domain();
    lifts
        .iter()
        .flat_map(|x| dom.prime_factors(x))
        .filter(|p| ring.quotient_by(p).is_some())
        .collect()
}

/// `H⁰(LΛ(A)) ≅ Λ(Ā)`, compared modulo `a^K` for each precision.
pub fn check_completion_h0(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "completion_of_ring_h0";
    let d = z.digest();
    let a = &z.dg_ring;
    let (abar, lifts) = lifts_bar(z)?;
    let unit = SemiFreeDGModule::unit(a);
    for k in 1..=z.budgets.precision {
        let derived = llambda_mod_power(a, &z.ideal_lifts, &unit, k)?.get(0);
        let classical = classical_lambda(&ModulePresentation::free(abar.clone(), 1), &lifts, k).module;
        if !same_module(a.base(), &derived, &classical) {
            return Ok(CheckReport::fail(
                NAME,
                &d,
                z.to_json(),
                format!("K = {k}: {} vs {}", derived.label(), classical.label()),
            ));
        }
    }
    Ok(CheckReport::pass(NAME, &d, format!("K = 1..{}", z.budgets.precision)))
}

/// The evaluation map `K ⊗ Hom_A(M, N) → Hom_A(M, K ⊗ N)` for a complex `K`
/// of free `A⁰`-modules, as an explicit chain map.
pub fn evaluation_map(k: &FreeComplex, m: &SemiFreeDGModule, n: &SemiFreeDGModule) -> Result<ComplexMap> {
    let base = m.ring().base().clone();
    let hom = hom_a(m, n)?;
    let src = validated(&tensor(k, &hom)?)?;
    let n2 = tensor_base_complex(k, n)?;
    let tgt = hom_a(m, &n2)?;
    let nb = n.basis().len();
    let mut slots = BTreeMap::new();
    for (&i, &r) in k.ranks() {
        for a in 0..r {
            let next = slots.len();
            slots.insert((i, a), next);
        }
    }
    // per basis element of M: offset and layout of its block in Hom_A(M, X)^j
    let hom_blocks = |x: &SemiFreeDGModule, j: i64| -> BTreeMap<usize, (usize, Vec<(u32, usize)>)> {
        let mut out = BTreeMap::new();
        let mut off = 0;
        for (b, e) in m.basis().iter().enumerate() {
            let lay = x.layout(e.deg + j);
            if !lay.is_empty() {
                let len = lay.len();
                out.insert(b, (off, lay));
                off += len;
            }
        }
        out
    };
    let mut comps = BTreeMap::new();
    for &deg in src.ranks().keys() {
        let mut f = Matrix::zeros(base.clone(), tgt.rank(deg), src.rank(deg));
        let index: BTreeMap<(usize, u32, usize), usize> = hom_blocks(&n2, deg)
            .into_iter()
            .flat_map(|(b, (off, lay))| lay.into_iter().enumerate().map(move |(q, (s, c))| ((b, s, c), off + q)))
            .collect();
        let mut col = 0;
        for (&i, &r) in k.ranks() {
            let sblocks = hom_blocks(n, deg - i);
            for a in 0..r {
                let slot = slots[&(i, a)] * nb;
                for (b, (_, lay)) in &sblocks {
                    for &(s, c) in lay {
                        let sign = if (i * s.count_ones() as i64) % 2 == 0 { 1 } else { -1 };
                        f.set(index[&(*b, s, slot + c)], col, base.from_i64(sign));
                        col += 1;
                    }
                }
            }
        }
        comps.insert(deg, f);
    }
    ComplexMap::new(src, tgt, comps)
}

/// Tensor evaluation for `K = Tel_1(A⁰; a)`: variant 1 with `M = N` the zoo
/// module, variant 2 with `M` a resolution of a cyclic `Ā`-module.
pub fn check_tensor_evaluation(z: &ZooInstance, variant: u8) -> Result<CheckReport> {
    let name = format!("tensor_evaluation_{variant}");
    let d = z.digest();
    let a = &z.dg_ring;
    let k = build_telescope(a.base(), &z.ideal_lifts, 1)?.complex;
    let (m, truncated) = match variant {
        1 => (z.module.clone(), false),
        _ => {
            let (abar, _) = lifts_bar(z)?;
            let c = abar.reduce(&z.ideal_lifts[0]);
            let c = if abar.quotient_by(&c).is_some() { c } else { abar.domain().zero() };
            let r = cached_resolve_cyclic(a, &c, -3, Budget::default())?;
            (r.module, !r.adjoined.is_empty())
        }
    };
    let eta = evaluation_map(&k, &m, &z.module)?;
    let ok = crate::complex::is_quasi_iso(&eta);
    if truncated {
        let name = format!("tensor_evaluation_{variant}_control");
        return Ok(CheckReport::new(
            &name,
            &d,
            super::report::Verdict::Control { observed: if ok { "quasi-isomorphism" } else { "not a quasi-isomorphism" }.into() },
            "M is a truncated resolution of infinite projective dimension",
        ));
    }
    Ok(if ok {
        CheckReport::pass(&name, &d, "η is a quasi-isomorphism")
    } else {
        CheckReport::fail(&name, &d, z.to_json(), "η is not a quasi-isomorphism")
    })
}

fn sampled_modules(z: &ZooInstance, count: usize) -> Vec<SemiFreeDGModule> {
    let mut rng = sampling_rng(z);
    (0..count).map(|_| random_module(&mut rng, &z.dg_ring, &z.budgets)).collect()
}

fn reduction_verdict(name: &str, z: &ZooInstance, r: &DimensionReport, sampled: Option<i64>) -> CheckReport {
    let d = z.digest();
    let shown = sampled.map_or("-∞".to_string(), |v| v.to_string());
    let want = match r.value {
        DimValue::MinusInfinity => None,
        DimValue::Finite(n) => Some(n),
        DimValue::ExceedsCutoff(_) => unreachable!("handled by the caller"),
    };
    if sampled == want {
        CheckReport::pass(name, &d, format!("sampled {shown} = {}", r.value))
    } else {
        CheckReport::fail(name, &d, z.to_json(), format!("sampled {shown}, reduction {}", r.value))
    }
}

/// The defining supremum over bounded `N` (sampled, plus the cyclic prime
/// quotients as DG resolutions) against the reduction to `Ā`.
pub fn check_injdim_reduction(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "injdim_reduction";
    let a = &z.dg_ring;
    let r = injdim_dg(a, &z.module, z.budgets.cutoff)?;
    if let DimValue::ExceedsCutoff(_) = r.value {
        return Ok(CheckReport::skip(NAME, &z.digest(), SkipReason::ExceedsCutoff, r.value.to_string()));
    }
    let mut best: Option<i64> = None;
    for n in sampled_modules(z, 3) {
        let Some((inf_n, _)) = inf_sup(&n) else { continue };
        let h = cohomology(&hom_a(&n, &z.module)?);
        if let Some(top) = h.sup() {
            best = best.max(Some(top + inf_n));
        }
    }
    if let (Some((s, _)), DimValue::Finite(rv)) = (inf_sup(&z.module), r.value) {
        for p in &prime_inventory(z)?.primes {
            let res = cached_resolve_cyclic(a, p, certified_floor(s, rv + 2), Budget::default())?;
            let hom = hom_a(&res.module, &z.module)?;
            for i in (s..=rv + 1).rev() {
                if !hom.cohomology_at(i).invariants.is_zero() {
                    best = best.max(Some(i));
                    break;
                }
            }
        }
    }
    Ok(reduction_verdict(NAME, z, &r, best))
}

pub fn check_flatdim_reduction(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "flatdim_reduction";
    let a = &z.dg_ring;
    let r = flatdim_dg(a, &z.module, z.budgets.cutoff)?;
    if let DimValue::ExceedsCutoff(_) = r.value {
        return Ok(CheckReport::skip(NAME, &z.digest(), SkipReason::ExceedsCutoff, r.value.to_string()));
    }
    let mut best: Option<i64> = None;
    for n in sampled_modules(z, 3) {
        let Some((inf_n, _)) = inf_sup(&n) else { continue };
        let h = cohomology(&dg_tensor(&n, &z.module)?.underlying_complex());
        if let Some(lowest) = h.inf() {
            best = best.max(Some(inf_n - lowest));
        }
    }
    if let (Some((_, t)), DimValue::Finite(rv)) = (inf_sup(&z.module), r.value) {
        let floor = (-rv - 2 - t).min(0);
        for p in &prime_inventory(z)?.primes {
            let res = cached_resolve_cyclic(a, p, floor, Budget::default())?;
            let tc = dg_tensor(&res.module, &z.module)?.underlying_complex();
            for j in floor + t..=t {
                if !tc.cohomology_at(j).invariants.is_zero() {
                    best = best.max(Some(-j));
                    break;
                }
            }
        }
    }
    Ok(reduction_verdict(NAME, z, &r, best))
}

/// The identity of `M` is a 0-cocycle of `Hom_A(M, M)`, and a coboundary
/// exactly when `M` is acyclic.
pub fn check_identity_endomorphism(z: &ZooInstance) -> Result<CheckReport> {
    const NAME: &str = "identity_endomorphism";
    let d = z.digest();
    let m = &z.module;
    let base = m.ring().base().clone();
    let h = hom_a(m, m)?;
    let mut v = Matrix::zeros(base.clone(), h.rank(0), 1);
    let mut off = 0;
    for (b, e) in m.basis().iter().enumerate() {
        let lay = m.layout(e.deg);
        if let Some(q) = lay.iter().position(|&key| key == (0, b)) {
            v.set(off + q, 0, base.one());
        }
        off += lay.len();
    }
    if !h.d(0).mul(&v).is_zero() {
        return Ok(CheckReport::fail(NAME, &d, z.to_json(), "d(id) ≠ 0"));
    }
    let boundary = subquotient(&v, &h.coboundaries(0)).invariants.is_zero();
    let acyclic = inf_sup(m).is_none();
    Ok(if boundary == acyclic {
        CheckReport::pass(NAME, &d, if acyclic { "id ~ 0, M acyclic" } else { "[id] ≠ 0" })
    } else {
        CheckReport::fail(NAME, &d, z.to_json(), format!("id null-homotopic: {boundary}, M acyclic: {acyclic}"))
    })
}

pub(crate) fn zoo_checks(z: &ZooInstance) -> Vec<CheckReport> {
    let d = z.digest();
    let w = || z.to_json();
    vec![
        guarded("rgamma_rhom_iso", &d, w, || check_rgamma_rhom(z)),
        guarded("injdim_rgamma_inequality", &d, w, || check_injdim_rgamma(z)),
        guarded("llambda_base_change_iso", &d, w, || check_llambda_base_change(z)),
        guarded("flatdim_llambda_inequality", &d, w, || check_flatdim_llambda(z)),
        guarded("injdim_reduction", &d, w, || check_injdim_reduction(z)),
        guarded("flatdim_reduction", &d, w, || check_flatdim_reduction(z)),
        guarded("tensor_evaluation_1", &d, w, || check_tensor_evaluation(z, 1)),
        guarded("tensor_evaluation_2", &d, w, || check_tensor_evaluation(z, 2)),
        guarded("identity_endomorphism", &d, w, || check_identity_endomorphism(z)),
    ]
}

pub(crate) fn ring_checks(z: &ZooInstance) -> Vec<CheckReport> {
    let d = z.digest();
    let w = || z.to_json();
    vec![
        guarded("completion_of_ring_flat", &d, w, || check_completion_tor_vanishing(z)),
        guarded("completion_of_ring_h0", &d, w, || check_completion_h0(z)),
    ]
}

// ---- module-level checks over artinian rings ----

fn artinian_cases() -> Vec<(RingSpec, Vec<Value>)> {
    let x = Value::Poly(Poly::x());
    let one = |r: &RingSpec| r.one();
    let mut out = Vec::new();
    for (r, nil) in [
        (RingSpec::integers_mod(4).unwrap(), Value::int(2)),
        (RingSpec::integers_mod(8).unwrap(), Value::int(2)),
        (RingSpec::integers_mod(9).unwrap(), Value::int(3)),
        (RingSpec::univariate_quotient(2, vec![0, 0, 1]).unwrap(), x),
    ] {
        for a in [r.zero(), nil, one(&r)] {
            out.push((r.clone(), vec![a]));
        }
    }
    out
}

/// Injective hulls of the residue fields, plus the ring itself.
fn injectives(r: &RingSpec) -> Vec<ModulePresentation> {
    let dom = r.domain();
    let m = r.modulus_or_zero();
    let mut out = vec![ModulePresentation::free(r.clone(), 1)];
    for p in dom.prime_factors(&m) {
        let mut q = p.clone();
        while dom.divides(&dom.mul(&q, &p), &m) {
            q = dom.mul(&q, &p);
        }
        out.push(ModulePresentation::cyclic(r.clone(), q));
    }
    out
}

fn dim_zero_or_empty(v: &DimValue) -> bool {
    matches!(v, DimValue::Finite(0) | DimValue::MinusInfinity)
}

fn case_key(r: &RingSpec, a: &[Value]) -> (String, Json) {
    let j = json!({ "ring": ring_to_json(r), "ideal": a.iter().map(value_to_json).collect::<Vec<_>>() });
    (super::zoo::digest_json(&j), j)
}

/// Torsion of an injective is injective; completion of a flat module is flat.
pub(crate) fn module_theorem_checks(cutoff: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (r, a) in artinian_cases() {
        let (key, j) = case_key(&r, &a);
        out.push(guarded("torsion_of_injective", &key, || j.clone(), || {
            for e in injectives(&r) {
                let g = classical_gamma(&e, &a);
                let rep = injdim_module(&g.presentation(), cutoff)?;
                if !dim_zero_or_empty(&rep.value) {
                    return Ok(CheckReport::fail("torsion_of_injective", &key, j.clone(), format!("Γ = {} has injdim {}", g.label(), rep.value)));
                }
            }
            Ok(CheckReport::pass("torsion_of_injective", &key, format!("{} over {r}", injectives(&r).len())))
        }));
        out.push(guarded("completion_of_flat", &key, || j.clone(), || {
            for f in injectives(&r) {
                let Some(lam) = (1..=8).map(|k| classical_lambda(&f, &a, k)).find(|c| c.exact) else {
                    return Ok(CheckReport::skip("completion_of_flat", &key, SkipReason::Unstable, "completion tower not constant by K = 8"));
                };
                let rep = flatdim_module(&lam.module.presentation(), cutoff)?;
                if !dim_zero_or_empty(&rep.value) {
                    return Ok(CheckReport::fail("completion_of_flat", &key, j.clone(), format!("Λ = {} has flatdim {}", lam.module.label(), rep.value)));
                }
            }
            Ok(CheckReport::pass("completion_of_flat", &key, format!("over {r}")))
        }));
    }
    out
}

// ---- global oracles ----

fn chain_ok(dom: &crate::ring::Domain, fs: &[Value]) -> bool {
    fs.windows(2).all(|w| dom.divides(&w[0], &w[1]))
}

/// Smith forms of seeded random integer matrices against the defining identities.
pub(crate) fn snf_oracle(seed: u64, count: usize) -> CheckReport {
    const NAME: &str = "smith_normal_form";
    let key = format!("snf-{seed}-{count}");
    guarded(NAME, &key, || json!({ "seed": seed, "count": count }), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-50..=50)).collect();
            let a = Matrix::from_i64(RingSpec::Integers, rows, cols, &entries);
            let s = smith_normal_form(&a)?;
            let dom = s.d.ring.clone();
            let problem = if s.u.mul(&a.lift()).mul(&s.v) != s.d {
                Some("U·A·V ≠ D")
            } else if !dom.is_unit(&s.u.determinant()) || !dom.is_unit(&s.v.determinant()) {
                Some("transform not unimodular")
            } else if !chain_ok(&dom, &s.invariant_factors) {
                Some("no divisibility chain")
            } else {
                None
            };
            if let Some(p) = problem {
                return Ok(CheckReport::fail(NAME, &key, matrix_to_json(&a), p));
            }
        }
        Ok(CheckReport::pass(NAME, &key, format!("{count} matrices")))
    })
}

/// `H¹(Tel_m(ℤ; a)) = ℤ/a^m`, `H⁰ = 0`, and base change to `ℤ/n` is reduction of entries.
pub(crate) fn telescope_oracle() -> CheckReport {
    const NAME: &str = "telescope_oracle";
    guarded(NAME, "telescope", || json!("telescope"), || {
        let z = RingSpec::Integers;
        for a in [2i64, 3, 6] {
            for m in 0..=4u32 {
                let t = build_telescope(&z, &[Value::int(a)], m as usize)?;
                let h = cohomology(&validated(&t.complex)?);
                let want = if m == 0 { vec![] } else { vec![Value::int(a.pow(m))] };
                if !h.get(0).is_zero() || h.get(1).factors != want {
                    return Ok(CheckReport::fail(NAME, "telescope", json!({"a": a, "m": m}), format!("H = {}", h.summary())));
                }
                let target = RingSpec::integers_mod(4).unwrap();
                let bc = telescope_base_change(&t, &target)?;
                let reduced = t.complex.reduce_into(&target)?;
                if bc.complex != reduced {
                    return Ok(CheckReport::fail(NAME, "telescope", json!({"a": a, "m": m}), "base change differs from reduction"));
                }
            }
        }
        Ok(CheckReport::pass(NAME, "telescope", "a ∈ {2, 3, 6}, m ≤ 4"))
    })
}

fn two_term(ring: &RingSpec, lo: i64, a: i64) -> FreeComplex {
    FreeComplex::from_differentials(ring.clone(), lo, vec![Matrix::from_i64(ring.clone(), 1, 1, &[a])]).unwrap()
}

/// `Hom(C ⊗ D, E) ≅ Hom(C, Hom(D, E))` on cohomology, with every complex re-validated.
pub(crate) fn adjunction_oracle() -> CheckReport {
    const NAME: &str = "hom_tensor_adjunction";
    guarded(NAME, "adjunction", || json!("adjunction"), || {
        let z = RingSpec::Integers;
        let cs = [two_term(&z, -1, 2), two_term(&z, 0, 3), FreeComplex::single(z.clone(), 1, 1)];
        let es = [two_term(&z, -1, 4), two_term(&z, 0, 6)];
        for c in &cs {
            let h = hom_complex(c, c)?;
            let mut v = Matrix::zeros(z.clone(), h.rank(0), 1);
            let mut off = 0;
            for &r in c.ranks().values() {
                for q in 0..r {
                    v.set(off + q * r + q, 0, z.one());
                }
                off += r * r;
            }
            if !h.d(0).mul(&v).is_zero() {
                return Ok(CheckReport::fail(NAME, "adjunction", crate::json::complex_to_json(c), "identity is not a cocycle of Hom(C, C)"));
            }
            for d in &cs {
                for e in &es {
                    let left = validated(&hom_complex(&validated(&tensor(c, d)?)?, e)?)?;
                    let right = validated(&hom_complex(c, &validated(&hom_complex(d, e)?)?)?)?;
                    let (hl, hr) = (cohomology(&left), cohomology(&right));
                    if hl != hr {
                        return Ok(CheckReport::fail(NAME, "adjunction", json!({"left": hl.summary(), "right": hr.summary()}), "cohomology differs"));
                    }
                }
            }
        }
        Ok(CheckReport::pass(NAME, "adjunction", "27 triples over ℤ"))
    })
}

/// Resolutions of `Ā` over the zoo's Koszul rings certify down to their floor.
pub(crate) fn resolution_oracle() -> CheckReport {
    const NAME: &str = "resolution_certificate";
    guarded(NAME, "resolutions", || json!("resolutions"), || {
        let cases = [
            (RingSpec::integers_mod(4).unwrap(), vec![2]),
            (RingSpec::integers_mod(8).unwrap(), vec![4]),
            (RingSpec::integers_mod(9).unwrap(), vec![3]),
            (RingSpec::Integers, vec![2, 4]),
        ];
        for (r, gens) in cases {
            let a = DGRingPresentation::koszul(r, gens.iter().map(|&g| Value::int(g)).collect())?;
            for floor in -6..=-3 {
                let res = cached_resolve_cyclic(&a, &a.base().zero(), floor, Budget::default())?;
                if let Err(e) = res.certify() {
                    return Ok(CheckReport::fail(NAME, "resolutions", json!({"dg_ring": a.to_string(), "floor": floor}), e.to_string()));
                }
            }
        }
        Ok(CheckReport::pass(NAME, "resolutions", "floors -6..-3"))
    })
}

pub(crate) fn global_checks(budgets: &Budgets, seed: u64) -> Vec<CheckReport> {
    let mut out = vec![snf_oracle(seed, 200), telescope_oracle(), adjunction_oracle(), resolution_oracle()];
    out.extend(module_theorem_checks(budgets.cutoff));
    out
}
