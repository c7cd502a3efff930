//! Derived completion LΛ through finite precision: `H(LΛ_(2) ℤ ⊗ ℤ/2^K) = ℤ/2^K`.

use dgwb::dg::{koszul_dg_ring, DGRingPresentation, SemiFreeDGModule};
use dgwb::local::{classical_lambda, llambda_mod_power, llambda_stabilized};
use dgwb::{ModulePresentation, RingSpec, Value};

fn main() -> dgwb::Result<()> {
    let z = DGRingPresentation::ordinary(RingSpec::Integers);
    let m = SemiFreeDGModule::unit(&z);
    let two = [Value::int(2)];
    for k in 1..=4 {
        let t = llambda_mod_power(&z, &two, &m, k)?;
        let c = classical_lambda(&ModulePresentation::free(RingSpec::Integers, 1), &two, k);
        println!("K = {k}: derived {}   classical {}", t.summary(), c.module.label());
    }
    // LΛ of a finite module stabilizes at a finite order
    let f = SemiFreeDGModule::cone_of_scalar(&z, &Value::int(12));
    let r = llambda_stabilized(&z, &two, &f, 8)?;
    println!("LΛ_(2)(ℤ/12) = {} [{:?}]", r.table.summary(), r.status);

    let a = koszul_dg_ring(RingSpec::integers_mod(9)?, vec![Value::int(3)])?;
    let r = llambda_stabilized(&a, &[Value::int(3)], &SemiFreeDGModule::unit(&a), 8)?;
    println!("Kos(ℤ/9; 3): LΛ_(3)(A) = {} [{:?}]", r.table.summary(), r.status);
    Ok(())
}
