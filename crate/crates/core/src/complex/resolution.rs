use std::collections::BTreeMap;

use super::FreeComplex;
use crate::ring::matrix::Matrix;
use crate::ring::{Coefficients, RingSpec, Value};

/// Free resolution of `R/(g)` over `R`, in degrees `−length..=0`.
///
/// Over a domain it has length at most one. Over `D/(n)` with `g` neither zero
/// nor a unit it is the periodic `⋯ --h--> R --g--> R` with `gh = n`, cut off
/// at `−length`, so it is exact only in degrees above `−length`.
pub fn cyclic_resolution(ring: &RingSpec, g: &Value, length: usize) -> FreeComplex {
    let dom = ring.domain();
    let m = ring.modulus_or_zero();
    let g = dom.gcd(&dom.normalize(&ring.reduce(g)).0, &m);
    if dom.is_unit(&g) {
        return FreeComplex::zero(ring.clone());
    }
    if !dom.is_zero(&m) && dom.divides(&m, &g) || dom.is_zero(&g) {
        return FreeComplex::single(ring.clone(), 0, 1);
    }
    let len = if dom.is_zero(&m) { length.min(1) } else { length };
    let h = if dom.is_zero(&m) { dom.zero() } else { dom.exact_div(&m, &g).expect("g divides the modulus") };
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    ranks.insert(0, 1);
    for k in 1..=len as i64 {
        ranks.insert(-k, 1);
        let e = if k % 2 == 1 { &g } else { &h };
        diffs.insert(-k, Matrix::from_entries(ring.clone(), 1, 1, vec![ring.reduce(e)]).unwrap());
    }
    FreeComplex::from_parts_unchecked(ring.clone(), ranks, diffs)
}
