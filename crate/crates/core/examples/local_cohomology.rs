//! Derived torsion RΓ over an ordinary ring and a Koszul DG-ring, against
//! the classical torsion functor.

use dgwb::dg::{koszul_dg_ring, DGRingPresentation, SemiFreeDGModule};
use dgwb::local::{classical_gamma, rgamma_stabilized};
use dgwb::{ModulePresentation, RingSpec, Value};

fn main() -> dgwb::Result<()> {
    let z = DGRingPresentation::ordinary(RingSpec::Integers);
    for (d, a) in [(12, 2), (12, 3), (12, 5)] {
        // cone of multiplication by d, quasi-isomorphic to ℤ/d
        let m = SemiFreeDGModule::cone_of_scalar(&z, &Value::int(d));
        let r = rgamma_stabilized(&z, &[Value::int(a)], &m, 8)?;
        let classical = classical_gamma(&ModulePresentation::cyclic(RingSpec::Integers, Value::int(d)), &[Value::int(a)]);
        println!("RΓ_({a})(ℤ/{d}) = {}   [{:?}; Γ = {}]", r.table.summary(), r.status, classical.label());
    }
    // H¹_(2)(ℤ) = ℤ[1/2]/ℤ is not finitely generated: the tables keep growing
    let r = rgamma_stabilized(&z, &[Value::int(2)], &SemiFreeDGModule::unit(&z), 6)?;
    println!("RΓ_(2)(ℤ) at order 6: {}   [stable: {}]", r.table.summary(), r.is_stable());

    let a = koszul_dg_ring(RingSpec::integers_mod(8)?, vec![Value::int(2)])?;
    let m = SemiFreeDGModule::unit(&a);
    for lift in [2, 1, 0] {
        let r = rgamma_stabilized(&a, &[Value::int(lift)], &m, 8)?;
        println!("Kos(ℤ/8; 2), ideal ({lift}): RΓ(A) = {}", r.table.summary());
    }
    Ok(())
}
