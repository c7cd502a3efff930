//! Smith normal form over ℤ and over 𝔽₂[x], with the unimodular transforms.

use dgwb::ring::smith::smith_domain;
use dgwb::{smith_normal_form, Domain, DomainMatrix, Matrix, Poly, RingSpec, Value};

fn main() -> dgwb::Result<()> {
    let a = Matrix::from_i64(RingSpec::Integers, 3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
    let s = smith_normal_form(&a)?;
    println!("A = {a:?}");
    println!("U = {:?}\nD = {:?}\nV = {:?}", s.u, s.d, s.v);
    let factors: Vec<String> = s.invariant_factors.iter().map(|f| f.to_string()).collect();
    println!("invariant factors: {}", factors.join(", "));

    // 𝔽₂[x], coefficients lowest degree first
    let x = |c: &[u64]| Value::Poly(Poly::from_coeffs(c.to_vec(), 2));
    let b = DomainMatrix::from_entries(
        Domain::Polynomials(2),
        2,
        2,
        vec![x(&[0, 1]), x(&[0, 0, 1]), x(&[1, 1]), x(&[0, 1])],
    )?;
    let s = smith_domain(&b);
    let factors: Vec<String> = s.invariant_factors.iter().map(|f| f.to_string()).collect();
    println!("over 𝔽₂[x]: {}", factors.join(", "));
    Ok(())
}
