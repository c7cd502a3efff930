//! Acceptance run: one line per criterion, nonzero exit if any is red.
//!
//! Oracles here are computed by hand (integer arithmetic, prime factorization)
//! and do not route through the library's own algorithms.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dgwb::dg::{DGRingPresentation, SemiFreeDGModule};
use dgwb::harness::{run_suite, SuiteConfig, SuiteReport, Tally};
use dgwb::local::{build_telescope, rgamma_stabilized, telescope_base_change};
use dgwb::mutation::Mutant;
use dgwb::{smith_normal_form, Matrix, Poly, RingSpec, Value};

const SNF_MATRICES: usize = 1000;
const SNF_MAX_DIM: usize = 6;
const SNF_MAX_ENTRY: i64 = 50;
const SNF_TIME_LIMIT: Duration = Duration::from_secs(10);
const TELESCOPE_CASES: usize = 100;
const TELESCOPE_MAX_ORDER: usize = 8;
const ORACLE_INSTANCES: usize = 50;
const ORACLE_CUTOFF: usize = 8;
const SUITE_SEED: u64 = 0;
const SUITE_COUNT: usize = 40;
const ISO_MIN: usize = 40;
const MAX_SKIPPED_FRACTION: f64 = 0.25;
const REDUCTION_MIN: usize = 30;
const INEQUALITY_MIN: usize = 40;
const SUITE_TIME_LIMIT: Duration = Duration::from_secs(300);
const MUTANT_COUNT: usize = 8;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

// ---- 1. Smith normal form ----

fn int(v: &Value) -> i64 {
    v.as_int().and_then(|n| i64::try_from(n).ok()).expect("small integer")
}

/// Fraction-free (Bareiss) elimination over ℤ.
fn determinant(m: &Matrix) -> BigInt {
    let n = m.rows;
    let mut a: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).as_int().expect("integer entry").clone()).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn det_is_pm1(m: &Matrix) -> bool {
    determinant(m).abs().is_one()
}

fn snf_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    for n in 0..SNF_MATRICES {
        let (r, c) = (rng.gen_range(1..=SNF_MAX_DIM), rng.gen_range(1..=SNF_MAX_DIM));
        let e: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-SNF_MAX_ENTRY..=SNF_MAX_ENTRY)).collect();
        let a = Matrix::from_i64(RingSpec::Integers, r, c, &e);
        let s = match smith_normal_form(&a) {
            Ok(s) => s,
            Err(err) => return outcome(false, format!("matrix {n}: {err}")),
        };
        let u = Matrix::from_entries(RingSpec::Integers, r, r, s.u.entries.clone()).unwrap();
        let v = Matrix::from_entries(RingSpec::Integers, c, c, s.v.entries.clone()).unwrap();
        let d = Matrix::from_entries(RingSpec::Integers, r, c, s.d.entries.clone()).unwrap();
        if u.mul(&a).mul(&v) != d {
            return outcome(false, format!("matrix {n}: U·A·V ≠ D"));
        }
        if !det_is_pm1(&u) || !det_is_pm1(&v) {
            return outcome(false, format!("matrix {n}: transform not unimodular"));
        }
        for i in 0..r {
            for j in 0..c {
                if i != j && int(d.get(i, j)) != 0 {
                    return outcome(false, format!("matrix {n}: D not diagonal"));
                }
            }
        }
        let diag: Vec<i64> = (0..r.min(c)).map(|i| int(d.get(i, i))).collect();
        if diag.iter().any(|&x| x < 0) {
            return outcome(false, format!("matrix {n}: negative invariant factor"));
        }
        for w in diag.windows(2) {
            let ok = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
            if !ok {
                return outcome(false, format!("matrix {n}: {} does not divide {}", w[0], w[1]));
            }
        }
    }
    let t = start.elapsed();
    outcome(t < SNF_TIME_LIMIT, format!("{SNF_MATRICES} matrices in {t:.2?} (limit {SNF_TIME_LIMIT:?})"))
}

// ---- 2. telescope base change ----

fn poly2(c: &[u64]) -> Value {
    Value::Poly(Poly::from_coeffs(c.to_vec(), 2))
}

fn telescope_base_change_suite() -> Outcome {
    let zn = |n: i64| RingSpec::integers_mod(n).unwrap();
    let fp = |p: u64| RingSpec::prime_field(p).unwrap();
    let x4 = RingSpec::univariate_quotient(2, vec![0, 0, 0, 0, 1]).unwrap();
    let x2 = RingSpec::univariate_quotient(2, vec![0, 0, 1]).unwrap();
    let maps: Vec<(RingSpec, RingSpec)> = vec![
        (RingSpec::Integers, zn(4)),
        (RingSpec::Integers, zn(9)),
        (RingSpec::Integers, fp(2)),
        (RingSpec::Integers, fp(3)),
        (RingSpec::Integers, RingSpec::Rationals),
        (zn(8), zn(4)),
        (zn(8), fp(2)),
        (zn(12), zn(6)),
        (zn(9), fp(3)),
        (x4.clone(), x2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..TELESCOPE_CASES {
        let (src, tgt) = &maps[case % maps.len()];
        let k = rng.gen_range(1..=2);
        let order = rng.gen_range(0..=TELESCOPE_MAX_ORDER);
        let order = if k == 2 { order.min(5) } else { order };
        let gens: Vec<Value> = (0..k)
            .map(|_| {
                if *src == x4 {
                    poly2(&[rng.gen_range(0..2), rng.gen_range(0..2), rng.gen_range(0..2)])
                } else {
                    Value::int(rng.gen_range(-6..=12))
                }
            })
            .collect();
        let run = || -> dgwb::Result<bool> {
            let t = build_telescope(src, &gens, order)?;
            let changed = telescope_base_change(&t, tgt)?;
            let direct = build_telescope(tgt, &gens, order)?;
            // entrywise reduction exists only for quotients of one domain
            let reduced = src.domain() != tgt.domain() || changed.complex == t.complex.reduce_into(tgt)?;
            Ok(changed.complex == direct.complex && reduced)
        };
        match run() {
            Ok(true) => {}
            Ok(false) => return outcome(false, format!("case {case}: {src} → {tgt}, {gens:?}, order {order}")),
            Err(e) => return outcome(false, format!("case {case}: {e}")),
        }
    }
    outcome(true, format!("{TELESCOPE_CASES} cases, orders ≤ {TELESCOPE_MAX_ORDER}"))
}

// ---- 3. classical torsion oracle ----

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime powers of a finite cyclic group `ℤ/m`; `0` stands for a free summand.
fn elementary(m: i64) -> Vec<i64> {
    if m == 0 {
        return vec![0];
    }
    let mut m = m.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while m > 1 {
        let mut q = 1;
        while m % p == 0 {
            m /= p;
            q *= p;
        }
        if q > 1 {
            out.push(q);
        }
        p += 1;
    }
    out
}

/// Order of the `a`-power torsion of `ℤ/m`: `lim gcd(a^k, m)`.
fn torsion_part(m: i64, a: i64) -> i64 {
    let mut pow = 1i64;
    let mut g = 1;
    for _ in 0..8 {
        pow = (pow * a).rem_euclid(m);
        g = gcd(pow, m);
    }
    g
}

fn group_key(factors: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = factors.into_iter().flat_map(elementary).collect();
    v.sort_unstable();
    v
}

/// A random product of elementary row operations, as an integer matrix.
fn unimodular(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    if k < 2 {
        return u;
    }
    for _ in 0..2 * k {
        let i = rng.gen_range(0..k);
        let j = (i + rng.gen_range(1..k)) % k;
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        for c in 0..k {
            u[j][c] += s * u[i][c];
        }
    }
    u
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = b[0].len();
    a.iter().map(|row| (0..k).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

/// `X = (R^k --U·diag(d)·V--> R^k)` in degrees −1, 0, with its cohomology
/// known from the diagonal: `H⁰ = ⊕ R/(d_i)` and `H⁻¹ = ⊕ ann(d_i)`.
fn hidden_diagonal(rng: &mut ChaCha8Rng, ring: &RingSpec, n: i64) -> (SemiFreeDGModule, Vec<i64>, Vec<i64>) {
    let k = rng.gen_range(1..=3);
    let diag: Vec<i64> = (0..k)
        .map(|_| if n == 0 { rng.gen_range(1..=24) } else { rng.gen_range(0..n) })
        .collect();
    let d: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
    let m = mat_mul(&mat_mul(&unimodular(rng, k), &d), &unimodular(rng, k));
    let a = DGRingPresentation::ordinary(ring.clone());
    let mut x = SemiFreeDGModule::zero(&a);
    for i in 0..k {
        x = x.adjoin(&format!("e{i}"), 0, &[]).unwrap();
    }
    for j in 0..k {
        let col: Vec<Value> = (0..k).map(|i| ring.reduce(&Value::int(m[i][j]))).collect();
        x = x.adjoin(&format!("f{j}"), -1, &col).unwrap();
    }
    let (h0, hm1) = if n == 0 {
        (diag.clone(), vec![])
    } else {
        let g: Vec<i64> = diag.iter().map(|&x| gcd(x, n)).collect();
        (g.clone(), g)
    };
    (x, h0, hm1)
}

fn classical_oracle_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let moduli = [0i64, 4, 8, 9, 12, 6];
    let mut stable = 0;
    for case in 0..ORACLE_INSTANCES {
        let n = moduli[case % moduli.len()];
        let ring = if n == 0 { RingSpec::Integers } else { RingSpec::integers_mod(n).unwrap() };
        let (x, h0, hm1) = hidden_diagonal(&mut rng, &ring, n);
        let a: i64 = [0, 1, 2, 3, 4, 6][rng.gen_range(0..6)];
        // Γ_a(ℤ/m) for ℤ/m a subquotient of the ring
        let gamma = |factors: &[i64]| {
            group_key(factors.iter().map(|&m| if m == 0 { 1 } else { torsion_part(m, a) }).filter(|&t| t > 1))
        };
        let mut want: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (deg, fs) in [(0, &h0), (-1, &hm1)] {
            let g = gamma(fs);
            if !g.is_empty() {
                want.insert(deg, g);
            }
        }
        let ad = DGRingPresentation::ordinary(ring.clone());
        let r = match rgamma_stabilized(&ad, &[Value::int(a)], &x, ORACLE_CUTOFF) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("case {case}: {e}")),
        };
        if !r.is_stable() {
            return outcome(false, format!("case {case}: unstable by order {ORACLE_CUTOFF}"));
        }
        stable += 1;
        let got: BTreeMap<i64, Vec<i64>> = r
            .table
            .groups
            .iter()
            .map(|(&i, g)| (i, group_key(g.factors.iter().map(int))))
            .collect();
        if got != want {
            return outcome(false, format!("case {case} over {ring}, a = {a}: got {got:?}, want {want:?}"));
        }
    }
    outcome(true, format!("{stable}/{ORACLE_INSTANCES} instances over ℤ and ℤ/n agree degreewise"))
}

// ---- suite-based criteria ----

fn tally(r: &SuiteReport, name: &str) -> Tally {
    r.by_check().into_iter().find(|(n, _)| n == name).map(|(_, t)| t).unwrap_or_default()
}

fn asserted(t: &Tally) -> usize {
    t.pass + t.fail + t.skipped
}

fn describe(name: &str, t: &Tally) -> String {
    format!(
        "{name}: {} pass, {} fail, {} skipped ({:.0}%)",
        t.pass,
        t.fail,
        t.skipped,
        100.0 * t.skipped_fraction()
    )
}

fn iso_checks(r: &SuiteReport) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["rgamma_rhom_iso", "llambda_base_change_iso"] {
        let t = tally(r, name);
        ok &= asserted(&t) >= ISO_MIN && t.fail == 0 && t.skipped_fraction() <= MAX_SKIPPED_FRACTION;
        parts.push(describe(name, &t));
    }
    outcome(ok, parts.join("; "))
}

fn reduction_checks(r: &SuiteReport) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["injdim_reduction", "flatdim_reduction"] {
        let t = tally(r, name);
        ok &= asserted(&t) >= REDUCTION_MIN && t.fail == 0 && t.pass > 0;
        parts.push(describe(name, &t));
    }
    outcome(ok, parts.join("; "))
}

fn inequality_checks(r: &SuiteReport, elapsed: Duration) -> Outcome {
    let mut ok = elapsed < SUITE_TIME_LIMIT;
    let mut parts = Vec::new();
    for name in ["injdim_rgamma_inequality", "flatdim_llambda_inequality"] {
        let t = tally(r, name);
        ok &= asserted(&t) >= INEQUALITY_MIN && t.fail == 0 && t.pass > 0;
        parts.push(describe(name, &t));
    }
    parts.push(format!("suite {elapsed:.1?} (limit {SUITE_TIME_LIMIT:?})"));
    outcome(ok, parts.join("; "))
}

fn all_pass(r: &SuiteReport, names: &[&str]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        let t = tally(r, name);
        ok &= t.pass > 0 && t.pass == t.total();
        parts.push(describe(name, &t));
    }
    outcome(ok, parts.join("; "))
}

fn mutants() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in Mutant::ALL {
        let mut cfg = SuiteConfig::new(SUITE_SEED, MUTANT_COUNT);
        cfg.mutant = Some(m);
        let fails = run_suite(&cfg).totals().fail;
        ok &= fails > 0;
        parts.push(format!("{m:?} {fails}"));
    }
    outcome(ok, format!("failures per mutant: {}", parts.join(", ")))
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut record = |n: usize, name: &'static str, o: Outcome| {
        println!("criterion {n:>2} {:<4} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, name, o));
    };
    record(1, "smith normal form", snf_suite());
    record(2, "telescope base change", telescope_base_change_suite());
    record(3, "classical torsion oracle", classical_oracle_suite());

    let cfg = SuiteConfig::new(SUITE_SEED, SUITE_COUNT);
    let start = Instant::now();
    let report = run_suite(&cfg);
    let elapsed = start.elapsed();
    record(4, "isomorphism checks", iso_checks(&report));
    record(5, "reduction equalities", reduction_checks(&report));
    record(6, "dimension inequalities", inequality_checks(&report, elapsed));
    record(7, "completion of the ring is flat", all_pass(&report, &["completion_of_ring_flat", "completion_of_ring_h0"]));
    record(8, "module-level torsion and completion", all_pass(&report, &["torsion_of_injective", "completion_of_flat"]));
    record(9, "mutation falsifiability", mutants());
    let again = run_suite(&cfg).to_json_string();
    let same = again == report.to_json_string();
    record(10, "determinism", outcome(same, format!("{} bytes, identical: {same}", again.len())));

    let red: Vec<usize> = results.iter().filter(|r| !r.2.ok).map(|r| r.0).collect();
    if red.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
    } else {
        println!("acceptance: failing criteria {red:?}");
        std::process::exit(1);
    }
}
