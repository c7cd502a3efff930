use std::collections::BTreeMap;

use crate::complex::{cyclic_resolution, hom_complex, tensor, CohomologyTable, FreeComplex};
use crate::error::{invalid, Result};
use crate::ring::{Coefficients, RingSpec, Value};

fn window_table(c: &FreeComplex, degrees: impl Iterator<Item = (i64, i64)>) -> CohomologyTable {
    let mut groups = BTreeMap::new();
    for (key, deg) in degrees {
        let g = c.cohomology_at(deg).invariants;
        if !g.is_zero() {
            groups.insert(key, g);
        }
    }
    CohomologyTable { ring: c.ring().clone(), groups }
}

fn check_window(window: (i64, i64)) -> Result<()> {
    if window.0 > window.1 {
        return invalid(format!("empty window {window:?}"));
    }
    Ok(())
}

/// `Ext^i(N, M)` for `i` in `window`. Bounded free complexes are K-projective,
/// so no resolution of `N` is needed.
pub fn ext_table(n: &FreeComplex, m: &FreeComplex, window: (i64, i64)) -> Result<CohomologyTable> {
    check_window(window)?;
    let h = hom_complex(n, m)?;
    Ok(window_table(&h, (window.0..=window.1).map(|i| (i, i))))
}

/// `Tor_i(N, M) = H^{−i}(N ⊗ M)` for `i` in `window`, keyed by `i`.
pub fn tor_table(n: &FreeComplex, m: &FreeComplex, window: (i64, i64)) -> Result<CohomologyTable> {
    check_window(window)?;
    let t = tensor(n, m)?;
    Ok(window_table(&t, (window.0..=window.1).map(|i| (i, -i))))
}

/// Whether the resolution of `R/(g)` is infinite (periodic).
pub fn resolution_is_periodic(ring: &RingSpec, g: &Value) -> bool {
    let dom = ring.domain();
    let m = ring.modulus_or_zero();
    if dom.is_zero(&m) {
        return false;
    }
    let g = dom.gcd(&ring.reduce(g), &m);
    !dom.is_unit(&g) && !dom.is_zero(&g) && !dom.divides(&m, &g)
}

/// Resolution length keeping a span of degrees clear of the cut-off end.
fn length_for(span: i64) -> usize {
    span.max(0) as usize + 2
}

/// `Ext^i(R/(g), M)` for `i` in `window`.
pub fn ext_cyclic(ring: &RingSpec, g: &Value, m: &FreeComplex, window: (i64, i64)) -> Result<CohomologyTable> {
    let s = m.support().map_or(0, |s| s.0);
    let f = cyclic_resolution(ring, g, length_for(window.1 - s + 1));
    ext_table(&f, m, window)
}

/// `Tor_i(R/(g), M)` for `i` in `window`.
pub fn tor_cyclic(ring: &RingSpec, g: &Value, m: &FreeComplex, window: (i64, i64)) -> Result<CohomologyTable> {
    let t = m.support().map_or(0, |s| s.1);
    let f = cyclic_resolution(ring, g, length_for(window.1 + t + 1));
    tor_table(&f, m, window)
}

/// `Ext^i(M, R/(g))` for `i` in `window`.
pub fn ext_into_cyclic(ring: &RingSpec, m: &FreeComplex, g: &Value, window: (i64, i64)) -> Result<CohomologyTable> {
    let (s, t) = m.support().unwrap_or((0, 0));
    let f = cyclic_resolution(ring, g, length_for(t - s - window.0 + 1));
    ext_table(m, &f, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::matrix::Matrix;

    fn ints(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::int(x)).collect()
    }

    #[test]
    fn ext_over_z() {
        let z = RingSpec::Integers;
        let n = cyclic_resolution(&z, &Value::int(6), 1);
        let m = FreeComplex::single(z.clone(), 0, 1);
        let e = ext_table(&n, &m, (0, 3)).unwrap();
        assert!(e.get(0).is_zero());
        assert_eq!(e.get(1).factors, ints(&[6]));
        assert_eq!(e.groups.len(), 1);
        let free = FreeComplex::single(z.clone(), 2, 1);
        let e = ext_table(&free, &m, (-4, 4)).unwrap();
        assert_eq!(e.get(-2).factors, ints(&[0]));
    }

    #[test]
    fn periodic_ext_and_tor() {
        let z4 = RingSpec::integers_mod(4).unwrap();
        let e = ext_cyclic(&z4, &Value::int(2), &FreeComplex::single(z4.clone(), 0, 1), (0, 5)).unwrap();
        assert_eq!(e.get(0).factors, ints(&[2]));
        assert_eq!(e.groups.len(), 1);
        assert!(resolution_is_periodic(&z4, &Value::int(2)));
        assert!(!resolution_is_periodic(&z4, &Value::int(4)));
        let t = tor_cyclic(&z4, &Value::int(2), &FreeComplex::single(z4.clone(), 0, 1), (0, 5)).unwrap();
        assert_eq!(t.groups.len(), 1);
    }

    #[test]
    fn tor_over_z() {
        let z = RingSpec::Integers;
        let two = FreeComplex::from_differentials(z.clone(), -1, vec![Matrix::from_i64(z.clone(), 1, 1, &[2])]).unwrap();
        let t = tor_cyclic(&z, &Value::int(2), &two, (0, 4)).unwrap();
        assert_eq!(t.get(0).factors, ints(&[2]));
        assert_eq!(t.get(1).factors, ints(&[2]));
        assert_eq!(t.groups.len(), 2);
        let e = ext_into_cyclic(&z, &two, &Value::int(2), (-2, 4)).unwrap();
        assert_eq!(e.get(0).factors, ints(&[2]));
        assert_eq!(e.get(1).factors, ints(&[2]));
    }
}
