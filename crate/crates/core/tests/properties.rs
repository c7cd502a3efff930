use proptest::prelude::*;

use dgwb::dimension::{ext_table, flatdim_module, flatdim_ring, injdim_ring, projdim_module, projdim_ring, tor_table, DimValue};
use dgwb::harness::{generate_zoo, Budgets};
use dgwb::json::{dg_module_from_json, dg_module_to_json};
use dgwb::local::build_telescope;
use dgwb::{cohomology, smith_normal_form, FreeComplex, Matrix, ModulePresentation, RingSpec, Value};

fn rings() -> Vec<RingSpec> {
    vec![
        RingSpec::Integers,
        RingSpec::integers_mod(4).unwrap(),
        RingSpec::integers_mod(6).unwrap(),
        RingSpec::integers_mod(9).unwrap(),
        RingSpec::prime_field(3).unwrap(),
    ]
}

/// `R^cols --A--> R^rows` in degrees `lo, lo + 1`.
fn two_term(ring: &RingSpec, lo: i64, rows: usize, cols: usize, e: &[i64]) -> FreeComplex {
    let a = Matrix::from_i64(ring.clone(), rows, cols, &e[..rows * cols]);
    FreeComplex::from_differentials(ring.clone(), lo, vec![a]).unwrap()
}

fn complex_params() -> impl Strategy<Value = (i64, usize, usize, Vec<i64>)> {
    (-2i64..=1, 1usize..=2, 1usize..=2, prop::collection::vec(-6i64..=6, 4))
}

fn squares_to_zero(c: &FreeComplex) -> bool {
    let Some((lo, hi)) = c.support() else { return true };
    (lo - 1..=hi).all(|i| c.d(i + 1).mul(&c.d(i)).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_identities(
        (r, c) in (1usize..=5, 1usize..=5),
        e in prop::collection::vec(-30i64..=30, 25),
        field in any::<bool>(),
    ) {
        let ring = if field { RingSpec::prime_field(5).unwrap() } else { RingSpec::Integers };
        let a = Matrix::from_i64(ring.clone(), r, c, &e[..r * c]);
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a.lift()).mul(&s.v), s.d.clone());
        let dom = s.d.ring.clone();
        prop_assert!(dom.is_unit(&s.u.determinant()));
        prop_assert!(dom.is_unit(&s.v.determinant()));
        for w in s.invariant_factors.windows(2) {
            prop_assert!(dom.divides(&w[0], &w[1]));
        }
        // row operations do not change the invariant factors
        let mut p = Matrix::identity(ring.clone(), r);
        if r > 1 {
            p.set(1, 0, Value::int(e[0]));
        }
        prop_assert_eq!(smith_normal_form(&p.mul(&a)).unwrap().invariant_factors, s.invariant_factors);
    }

    #[test]
    fn tensor_and_hom_square_to_zero(
        ri in 0usize..5,
        (lo1, r1, c1, e1) in complex_params(),
        (lo2, r2, c2, e2) in complex_params(),
    ) {
        let ring = &rings()[ri];
        let x = two_term(ring, lo1, r1, c1, &e1);
        let y = two_term(ring, lo2, r2, c2, &e2);
        let t = dgwb::complex::tensor(&x, &y).unwrap();
        let h = dgwb::complex::hom_complex(&x, &y).unwrap();
        prop_assert!(squares_to_zero(&t));
        prop_assert!(squares_to_zero(&h));
        prop_assert!(squares_to_zero(&dgwb::complex::tensor(&t, &x).unwrap()));
        // tensoring with the ring is the identity on cohomology
        let unit = FreeComplex::single(ring.clone(), 0, 1);
        prop_assert_eq!(cohomology(&dgwb::complex::tensor(&x, &unit).unwrap()), cohomology(&x));
    }

    #[test]
    fn zoo_is_reproducible(seed in any::<u64>(), count in 0usize..4) {
        let b = Budgets::default();
        let a = generate_zoo(seed, count, &b);
        let c = generate_zoo(seed, count, &b);
        prop_assert_eq!(&a, &c);
        for z in &a {
            let back = dg_module_from_json(&dg_module_to_json(&z.module), None).unwrap();
            prop_assert_eq!(&back, &z.module);
            prop_assert_eq!(z.digest(), c[z.index].digest());
        }
    }

    #[test]
    fn telescope_cohomology_over_integers(a in 1i64..=7, m in 0u32..=5) {
        let t = build_telescope(&RingSpec::Integers, &[Value::int(a)], m as usize).unwrap();
        let h = cohomology(&t.complex);
        prop_assert!(h.get(0).is_zero());
        let want = a.pow(m);
        if want == 1 {
            prop_assert!(h.get(1).is_zero());
        } else {
            prop_assert_eq!(h.get(1).factors, vec![Value::int(want)]);
        }
    }

    /// For `N ≃ ℤ/d[−m]` and `M = ℤ/e`, Ext and Tor are `ℤ/gcd(d, e)` in the
    /// two shifted positions and zero elsewhere.
    #[test]
    fn amplitude_zero_collapse(d in 2i64..=12, e in 2i64..=12, m in -2i64..=2) {
        let z = RingSpec::Integers;
        let n = two_term(&z, m - 1, 1, 1, &[d]);
        let mm = two_term(&z, -1, 1, 1, &[e]);
        let g = Value::int(num_integer::gcd(d, e));
        let ext = ext_table(&n, &mm, (-6, 6)).unwrap();
        let tor = tor_table(&n, &mm, (-6, 6)).unwrap();
        for (t, positions) in [(&ext, [-m, 1 - m]), (&tor, [-m, 1 - m])] {
            for i in -6..=6 {
                let want: Vec<Value> = if positions.contains(&i) && g != Value::int(1) { vec![g.clone()] } else { vec![] };
                prop_assert_eq!(t.get(i).factors, want, "degree {}", i);
            }
        }
    }

    #[test]
    fn flat_and_projective_dimensions_agree(
        ri in 0usize..5,
        gens in 1usize..=2,
        rels in 0usize..=2,
        e in prop::collection::vec(-6i64..=6, 4),
    ) {
        let ring = &rings()[ri];
        let rel = Matrix::from_i64(ring.clone(), gens, rels, &e[..gens * rels]);
        let p = ModulePresentation::new(gens, rel).unwrap();
        let f = flatdim_module(&p, 5).unwrap();
        let q = projdim_module(&p, 5).unwrap();
        prop_assert_eq!(f.value, q.value);
    }

    #[test]
    fn flat_dimension_at_most_projective((lo, r, c, e) in complex_params(), ri in 0usize..5) {
        let x = two_term(&rings()[ri], lo, r, c, &e);
        let f = flatdim_ring(&x, 5).unwrap();
        let p = projdim_ring(&x, 5).unwrap();
        prop_assert_ne!(f.value.at_most(&p.value), Some(false));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// The detector's value `n` bounds the defining quantifier: for sampled
    /// bounded `N`, `Ext^i(N, M) = 0` once `i > n − inf N`.
    #[test]
    fn injective_dimension_bounds_sampled_ext(
        ri in 0usize..5,
        (lo, r, c, e) in complex_params(),
        tests in prop::collection::vec(complex_params(), 4),
    ) {
        let ring = &rings()[ri];
        let m = two_term(ring, lo, r, c, &e);
        let rep = injdim_ring(&m, 6).unwrap();
        let DimValue::Finite(n) = rep.value else { return Ok(()) };
        for (lo2, r2, c2, e2) in tests {
            let test = two_term(ring, lo2, r2, c2, &e2);
            let Some(inf) = cohomology(&test).inf() else { continue };
            let t = ext_table(&test, &m, (n - inf + 1, n - inf + 4)).unwrap();
            prop_assert!(t.groups.is_empty(), "injdim {} but Ext nonzero: {}", n, t.summary());
        }
    }
}
