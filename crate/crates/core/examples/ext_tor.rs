//! Ext and Tor over ℤ/4 and ℤ through periodic resolutions of cyclic modules.

use dgwb::dimension::{ext_cyclic, tor_cyclic};
use dgwb::{CohomologyTable, FreeComplex, RingSpec, Value};

fn show(label: &str, t: &CohomologyTable) -> String {
    let parts: Vec<String> = t.groups.iter().map(|(i, g)| format!("{label}{i} = {g}")).collect();
    if parts.is_empty() { "0".into() } else { parts.join(", ") }
}

fn main() -> dgwb::Result<()> {
    let z4 = RingSpec::integers_mod(4)?;
    let m = FreeComplex::single(z4.clone(), 0, 1);
    // ℤ/2 over ℤ/4 has the 2-periodic resolution ⋯ --2--> ℤ/4 --2--> ℤ/4
    println!("Ext_ℤ/4(ℤ/2, ℤ/4): {}", show("Ext^", &ext_cyclic(&z4, &Value::int(2), &m, (0, 5))?));
    let m2 = FreeComplex::from_differentials(
        z4.clone(),
        -1,
        vec![dgwb::Matrix::from_i64(z4.clone(), 1, 1, &[2])],
    )?;
    // 2 kills ℤ/2, so the cone of 2 contributes in two adjacent degrees
    println!("Tor^ℤ/4(ℤ/2, cone(2)): {}", show("Tor_", &tor_cyclic(&z4, &Value::int(2), &m2, (0, 5))?));
    let z = RingSpec::Integers;
    let m6 = FreeComplex::from_differentials(z.clone(), -1, vec![dgwb::Matrix::from_i64(z.clone(), 1, 1, &[6])])?;
    println!("Ext_ℤ(ℤ/4, ℤ/6): {}", show("Ext^", &ext_cyclic(&z, &Value::int(4), &m6, (0, 3))?));
    Ok(())
}
