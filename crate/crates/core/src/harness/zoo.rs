//! Deterministic random instances: a Koszul DG-ring, an ideal of `Ā` given by
//! lifts, and a small semi-free DG-module.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};

use crate::dg::{koszul_dg_ring, DGRingPresentation, SemiFreeDGModule};
use crate::json::{dg_module_to_json, dg_ring_to_json, value_to_json};
use crate::ring::{Coefficients, Poly, RingSpec, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub max_basis: usize,
    pub degree_span: i64,
    pub cutoff: usize,
    pub precision: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_basis: 4, degree_span: 3, cutoff: 6, precision: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    Zero,
    Principal,
    Unit,
    NilpotentImage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZooInstance {
    pub index: usize,
    pub seed: u64,
    pub dg_ring: DGRingPresentation,
    pub ideal_kind: IdealKind,
    pub ideal_lifts: Vec<Value>,
    pub module: SemiFreeDGModule,
    pub budgets: Budgets,
}

impl ZooInstance {
    pub fn to_json(&self) -> Json {
        json!({
            "index": self.index,
            "seed": self.seed,
            "dg_ring": dg_ring_to_json(&self.dg_ring),
            "ideal_kind": self.ideal_kind,
            "ideal_lifts": self.ideal_lifts.iter().map(value_to_json).collect::<Vec<_>>(),
            "module": dg_module_to_json(&self.module),
            "budgets": self.budgets,
        })
    }

    pub fn digest(&self) -> String {
        digest_json(&self.to_json())
    }
}

/// First 16 hex digits of the SHA-256 of the compact JSON text.
pub fn digest_json(j: &Json) -> String {
    let h = Sha256::digest(j.to_string().as_bytes());
    hex::encode(&h[..8])
}

pub(crate) fn zoo_rings() -> Vec<RingSpec> {
    vec![
        RingSpec::Integers,
        RingSpec::integers_mod(4).unwrap(),
        RingSpec::integers_mod(8).unwrap(),
        RingSpec::integers_mod(9).unwrap(),
        RingSpec::prime_field(2).unwrap(),
        RingSpec::prime_field(3).unwrap(),
        RingSpec::univariate_quotient(2, vec![0, 0, 1]).unwrap(),
    ]
}

fn poly(c: &[u64]) -> Value {
    Value::Poly(Poly::from_coeffs(c.to_vec(), 2))
}

fn ints(xs: &[i64]) -> Vec<Value> {
    xs.iter().map(|&x| Value::int(x)).collect()
}

/// Non-units usable as Koszul generators.
fn koszul_pool(r: &RingSpec) -> Vec<Value> {
    match r {
        RingSpec::Integers => ints(&[0, 2, 3, 4, 6]),
        RingSpec::IntegersMod(n) => {
            let n = i64::try_from(n).expect("zoo moduli are small");
            (0..n).map(Value::int).filter(|x| !r.is_unit(x)).collect()
        }
        RingSpec::UnivariateQuotient(..) => vec![poly(&[]), poly(&[0, 1])],
        _ => vec![r.zero()],
    }
}

/// Coefficients for module differentials.
fn coefficient_pool(r: &RingSpec) -> Vec<Value> {
    match r {
        RingSpec::UnivariateQuotient(..) => vec![poly(&[]), poly(&[1]), poly(&[0, 1]), poly(&[1, 1])],
        _ => ints(&[-2, -1, 0, 1, 2, 3]).iter().map(|x| r.reduce(x)).collect(),
    }
}

fn pick<T: Clone>(rng: &mut ChaCha8Rng, xs: &[T]) -> T {
    xs.choose(rng).expect("nonempty pool").clone()
}

fn ring_choice(rng: &mut ChaCha8Rng) -> DGRingPresentation {
    let rings = zoo_rings();
    let base = pick(rng, &rings);
    let k = match rng.gen_range(0..20) {
        0..=6 => 0,
        7..=15 => 1,
        _ => 2,
    };
    let pool = koszul_pool(&base);
    let dom = base.domain();
    loop {
        let gens: Vec<Value> = (0..k).map(|_| pick(rng, &pool)).collect();
        let g = gens.iter().fold(dom.zero(), |acc, a| dom.gcd(&acc, a));
        if base.quotient_by(&g).is_some() {
            return koszul_dg_ring(base, gens).expect("zoo generators are valid");
        }
    }
}

fn ideal_choice(rng: &mut ChaCha8Rng, a: &DGRingPresentation) -> (IdealKind, Vec<Value>) {
    let base = a.base();
    let dom = base.domain();
    let h0 = a.h0().expect("zoo rings have a nonzero H⁰");
    let principal: Vec<Value> = koszul_pool(base)
        .into_iter()
        .filter(|x| !h0.ring.is_zero(x) && !h0.ring.is_unit(x))
        .collect();
    let kinds = [IdealKind::Zero, IdealKind::Principal, IdealKind::Unit, IdealKind::NilpotentImage];
    let mut kind = pick(rng, &kinds);
    let first = loop {
        match kind {
            IdealKind::Zero => break dom.zero(),
            IdealKind::Unit => break base.one(),
            IdealKind::Principal => {
                if principal.is_empty() {
                    kind = IdealKind::Zero;
                    continue;
                }
                break pick(rng, &principal);
            }
            IdealKind::NilpotentImage => {
                // the radical of a non-reduced Ā
                let m = h0.ring.modulus_or_zero();
                let primes = dom.prime_factors(&m);
                let rad = primes.iter().fold(dom.one(), |acc, p| dom.mul(&acc, p));
                if dom.is_zero(&m) || dom.normalize(&rad).0 == dom.normalize(&m).0 {
                    kind = IdealKind::Principal;
                    continue;
                }
                break rad;
            }
        }
    };
    let mut lifts = vec![first];
    if rng.gen_range(0..10) == 0 {
        let extra = if principal.is_empty() { dom.zero() } else { pick(rng, &principal) };
        lifts.push(extra);
    }
    (kind, lifts)
}

/// A random semi-free module: basis elements are added from the top degree
/// down, each either free or with `d` a random cocycle one degree up.
pub(crate) fn random_module(rng: &mut ChaCha8Rng, a: &DGRingPresentation, budgets: &Budgets) -> SemiFreeDGModule {
    let base = a.base();
    let coeffs = coefficient_pool(base);
    let n = rng.gen_range(1..=budgets.max_basis.max(1));
    let top: i64 = rng.gen_range(0..=1);
    let span = budgets.degree_span.max(1);
    let mut degs: Vec<i64> = (0..n).map(|_| top - rng.gen_range(0..span)).collect();
    degs.sort_unstable_by(|x, y| y.cmp(x));
    let mut m = SemiFreeDGModule::zero(a);
    for (j, &deg) in degs.iter().enumerate() {
        let name = format!("e{j}");
        let z = m.underlying_complex().cocycles(deg + 1);
        let mut v = vec![base.zero(); m.layout(deg + 1).len()];
        if z.cols > 0 && rng.gen_bool(0.6) {
            for c in 0..z.cols {
                let s = pick(rng, &coeffs);
                for (i, x) in z.column(c).iter().enumerate() {
                    v[i] = base.add(&v[i], &base.mul(&s, x));
                }
            }
        }
        m = m.adjoin(&name, deg, &v).expect("cocycles give a valid differential");
    }
    m
}

fn instance(seed: u64, index: usize, budgets: &Budgets) -> ZooInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let dg_ring = ring_choice(&mut rng);
    let (ideal_kind, ideal_lifts) = ideal_choice(&mut rng, &dg_ring);
    let module = if rng.gen_range(0..20) == 0 {
        SemiFreeDGModule::zero(&dg_ring)
    } else {
        random_module(&mut rng, &dg_ring, budgets)
    };
    ZooInstance { index, seed, dg_ring, ideal_kind, ideal_lifts, module, budgets: *budgets }
}

/// `count` instances, each determined by `(seed, index)` alone.
pub fn generate_zoo(seed: u64, count: usize, budgets: &Budgets) -> Vec<ZooInstance> {
    (0..count).map(|i| instance(seed, i, budgets)).collect()
}

/// An independent stream for sampling extra modules for instance `z`.
pub(crate) fn sampling_rng(z: &ZooInstance) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(z.seed ^ 0x5eed_5eed);
    rng.set_stream(z.index as u64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cohomology;

    #[test]
    fn deterministic() {
        let b = Budgets::default();
        let a = generate_zoo(0, 12, &b);
        let c = generate_zoo(0, 12, &b);
        assert_eq!(a, c);
        let da: Vec<String> = a.iter().map(|z| z.digest()).collect();
        let dc: Vec<String> = c.iter().map(|z| z.digest()).collect();
        assert_eq!(da, dc);
        assert!(generate_zoo(0, 0, &b).is_empty());
        assert_ne!(generate_zoo(1, 12, &b), a);
        // a prefix of a larger zoo is the smaller zoo
        assert_eq!(generate_zoo(0, 20, &b)[..12], a[..]);
    }

    #[test]
    fn instances_respect_budgets() {
        let b = Budgets::default();
        for z in generate_zoo(7, 60, &b) {
            assert!(z.module.basis().len() <= b.max_basis);
            if let Some((lo, hi)) = z.module.degree_range() {
                assert!(hi - (lo + z.dg_ring.len() as i64) < b.degree_span);
            }
            assert!(z.dg_ring.len() <= 2);
            z.dg_ring.h0().unwrap();
            let h = cohomology(&z.module.underlying_complex());
            assert!(h.groups.len() <= 8);
        }
    }

    #[test]
    fn pools_are_non_units() {
        for r in zoo_rings() {
            for x in koszul_pool(&r) {
                assert!(!r.is_unit(&x), "{x} in {r}");
            }
        }
        assert_eq!(koszul_pool(&RingSpec::integers_mod(8).unwrap()), ints(&[0, 2, 4, 6]));
    }
}
