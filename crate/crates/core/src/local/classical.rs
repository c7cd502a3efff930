//! Γ_a and Λ_a on finitely presented modules, through invariant factors.

use crate::ring::module::{module_invariants, ModuleInvariants, ModulePresentation};
use crate::ring::{Coefficients, RingSpec, Value};

use super::stable::canonical_invariants;

fn ideal_generator(ring: &RingSpec, a: &[Value]) -> Value {
    let dom = ring.domain();
    a.iter().fold(ring.modulus_or_zero(), |g, x| dom.gcd(&g, &ring.reduce(x)))
}

/// `ann_{D/(d)}(g^n) ≅ D/(gcd(d, g^n))`, with `d = 0` read as the free module.
fn cyclic_ann(ring: &RingSpec, d: &Value, gn: &Value) -> Value {
    let dom = ring.domain();
    if dom.is_zero(d) {
        // torsion-free: only g^n = 0 kills anything
        return if dom.is_zero(gn) { dom.zero() } else { dom.one() };
    }
    dom.gcd(d, gn)
}

/// The a-torsion submodule `Γ_a(M) = ⋃ ann_M(a^n)`, by saturation.
pub fn classical_gamma(p: &ModulePresentation, a: &[Value]) -> ModuleInvariants {
    let ring = &p.ring;
    let dom = ring.domain();
    let m = module_invariants(p);
    let g = ideal_generator(ring, a);
    let mut gn = g.clone();
    let mut prev: Option<Vec<Value>> = None;
    loop {
        let cur: Vec<Value> = m.factors.iter().map(|d| cyclic_ann(ring, d, &gn)).collect();
        if prev.as_ref() == Some(&cur) {
            return canonical_invariants(ring, &cur);
        }
        prev = Some(cur);
        gn = dom.mul(&gn, &g);
    }
}

/// `M/a^K M` together with whether the tower `M/a^n M` is already constant from `K` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionTruncation {
    pub module: ModuleInvariants,
    pub precision: u32,
    pub exact: bool,
}

fn quotient_factors(ring: &RingSpec, factors: &[Value], gk: &Value) -> Vec<Value> {
    let dom = ring.domain();
    factors.iter().map(|d| dom.gcd(d, gk)).collect()
}

pub fn classical_lambda(p: &ModulePresentation, a: &[Value], k: u32) -> CompletionTruncation {
    let ring = &p.ring;
    let dom = ring.domain();
    let m = module_invariants(p);
    let g = ideal_generator(ring, a);
    let mut gk = dom.one();
    for _ in 0..k {
        gk = dom.mul(&gk, &g);
    }
    let cur = quotient_factors(ring, &m.factors, &gk);
    let next = quotient_factors(ring, &m.factors, &dom.mul(&gk, &g));
    let exact = cur.iter().zip(&next).all(|(x, y)| dom.normalize(x).0 == dom.normalize(y).0)
        && (dom.is_zero(&g) || !m.factors.iter().any(|d| dom.is_zero(d)) || dom.is_unit(&g));
    CompletionTruncation { module: canonical_invariants(ring, &cur), precision: k, exact }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::int(x)).collect()
    }

    /// Count elements of ℤ/n killed by some power of `a`.
    fn torsion_count(n: i64, a: i64) -> usize {
        (0..n).filter(|&x| (1..8).any(|e| (x * a.pow(e)) % n == 0)).count()
    }

    #[test]
    fn gamma_examples() {
        let z = RingSpec::Integers;
        let g = classical_gamma(&ModulePresentation::cyclic(z.clone(), Value::int(12)), &ints(&[2]));
        assert_eq!(g.factors, ints(&[4]));
        assert_eq!(torsion_count(12, 2), 4);
        assert!(classical_gamma(&ModulePresentation::free(z.clone(), 2), &ints(&[2])).is_zero());
        let m = ModulePresentation::cyclic(z.clone(), Value::int(12));
        assert!(classical_gamma(&m, &ints(&[1])).is_zero());
        assert!(classical_gamma(&m, &ints(&[3, 2])).is_zero());
        assert_eq!(classical_gamma(&m, &ints(&[0])).factors, ints(&[12]));
        for n in 2..40 {
            for a in 2..7 {
                let g = classical_gamma(&ModulePresentation::cyclic(z.clone(), Value::int(n)), &ints(&[a]));
                let size: usize = g.factors.iter().map(|f| f.as_int().unwrap().try_into().unwrap_or(0usize)).product();
                assert_eq!(size, torsion_count(n, a), "ℤ/{n} at {a}");
            }
        }
    }

    #[test]
    fn lambda_examples() {
        let z = RingSpec::Integers;
        let l = classical_lambda(&ModulePresentation::cyclic(z.clone(), Value::int(8)), &ints(&[2]), 3);
        assert_eq!(l.module.factors, ints(&[8]));
        assert!(l.exact);
        let l = classical_lambda(&ModulePresentation::free(z.clone(), 1), &ints(&[2]), 2);
        assert_eq!(l.module.factors, ints(&[4]));
        assert!(!l.exact);
        // 2 acts invertibly on ℤ/3, so every quotient M/2^K M vanishes
        let l = classical_lambda(&ModulePresentation::cyclic(z.clone(), Value::int(3)), &ints(&[2]), 4);
        assert!(l.module.is_zero());
        assert!(l.exact);
        let z4 = RingSpec::integers_mod(4).unwrap();
        let l = classical_lambda(&ModulePresentation::free(z4, 1), &ints(&[2]), 2);
        assert_eq!(l.module.factors, ints(&[4]));
        assert!(l.exact);
    }
}
