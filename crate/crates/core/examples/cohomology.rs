//! Cohomology of free complexes, cones, and a quasi-isomorphism test.

use dgwb::complex::{cone, hom_complex, tensor};
use dgwb::{cohomology, is_quasi_iso, ComplexMap, FreeComplex, Matrix, RingSpec};

fn main() -> dgwb::Result<()> {
    let z = RingSpec::Integers;
    // ℤ --4--> ℤ in degrees −1, 0 and ℤ --6--> ℤ likewise
    let c4 = FreeComplex::from_differentials(z.clone(), -1, vec![Matrix::from_i64(z.clone(), 1, 1, &[4])])?;
    let c6 = FreeComplex::from_differentials(z.clone(), -1, vec![Matrix::from_i64(z.clone(), 1, 1, &[6])])?;
    println!("H(ℤ/4)        = {}", cohomology(&c4).summary());
    println!("H(ℤ/4 ⊗ ℤ/6)  = {}", cohomology(&tensor(&c4, &c6)?).summary());
    println!("H(Hom(ℤ/4, ℤ/6)) = {}", cohomology(&hom_complex(&c4, &c6)?).summary());

    // multiplication by 3 is invertible on ℤ/4, so it is a quasi-isomorphism
    let three = Matrix::from_i64(z.clone(), 1, 1, &[3]);
    let f = ComplexMap::new(c4.clone(), c4.clone(), [(-1, three.clone()), (0, three)].into_iter().collect())?;
    println!("×3 on ℤ/4 quasi-iso: {}, cone {}", is_quasi_iso(&f), cohomology(&cone(&f)).summary());
    let two = Matrix::from_i64(z.clone(), 1, 1, &[2]);
    let g = ComplexMap::new(c4.clone(), c4, [(-1, two.clone()), (0, two)].into_iter().collect())?;
    println!("×2 on ℤ/4 quasi-iso: {}, cone {}", is_quasi_iso(&g), cohomology(&cone(&g)).summary());
    Ok(())
}
