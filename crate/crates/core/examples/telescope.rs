//! Telescope truncations: `H¹(Tel_m(ℤ; a)) = ℤ/a^m`, and base change.

use dgwb::local::{build_telescope, telescope_base_change};
use dgwb::{cohomology, RingSpec, Value};

fn main() -> dgwb::Result<()> {
    let z = RingSpec::Integers;
    for m in 0..=4 {
        let t = build_telescope(&z, &[Value::int(2)], m)?;
        println!("Tel_{m}(ℤ; 2): ranks {:?}, H = {}", t.complex.ranks(), cohomology(&t.complex).summary());
    }
    let t = build_telescope(&z, &[Value::int(2), Value::int(3)], 2)?;
    println!("Tel_2(ℤ; 2, 3): H = {}", cohomology(&t.complex).summary());
    let z4 = RingSpec::integers_mod(4)?;
    let b = telescope_base_change(&t, &z4)?;
    let direct = build_telescope(&z4, &[Value::int(2), Value::int(3)], 2)?;
    println!("base change to ℤ/4 equals the telescope over ℤ/4: {}", b.complex == direct.complex);
    println!("over ℤ/4: H = {}", cohomology(&b.complex).summary());
    Ok(())
}
