//! Semi-free resolutions of `Ā = H⁰(A)` over Koszul DG-rings, certified
//! down to their floor.

use dgwb::dg::{koszul_dg_ring, tate_resolution};
use dgwb::{RingSpec, Value};

fn main() -> dgwb::Result<()> {
    let cases = [
        (RingSpec::integers_mod(4)?, vec![2]),
        (RingSpec::integers_mod(8)?, vec![4]),
        (RingSpec::Integers, vec![2, 4]),
    ];
    for (base, gens) in cases {
        let a = koszul_dg_ring(base, gens.into_iter().map(Value::int).collect())?;
        let r = tate_resolution(&a, -4)?;
        r.certify()?;
        println!(
            "{a}: Ā = {}, {} variables adjoined {:?}, certified for degrees ≥ {}",
            r.target,
            r.num_adjoined(),
            r.adjoined,
            r.floor
        );
    }
    Ok(())
}
