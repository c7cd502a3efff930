//! Injective, flat and projective dimensions, with their witnesses.

use dgwb::dg::{koszul_dg_ring, SemiFreeDGModule};
use dgwb::dimension::{flatdim_dg, flatdim_module, injdim_dg, injdim_module, projdim_module, DimensionReport};
use dgwb::{ModulePresentation, RingSpec, Value};

fn show(what: &str, r: &DimensionReport) {
    let w: Vec<String> = r.witnesses.iter().map(|w| format!("{} at {}: {}", w.prime, w.degree, w.group)).collect();
    println!("{what:<28} {:<14} primes {:?}  {}", r.value.to_string(), r.primes_used, w.join("; "));
}

fn main() -> dgwb::Result<()> {
    let z = RingSpec::Integers;
    let z4 = RingSpec::integers_mod(4)?;
    let cutoff = 6;
    show("injdim_ℤ ℤ/4", &injdim_module(&ModulePresentation::cyclic(z.clone(), Value::int(4)), cutoff)?);
    show("injdim_ℤ ℤ", &injdim_module(&ModulePresentation::free(z.clone(), 1), cutoff)?);
    show("injdim_ℤ/4 ℤ/4", &injdim_module(&ModulePresentation::free(z4.clone(), 1), cutoff)?);
    show("flatdim_ℤ/4 ℤ/2", &flatdim_module(&ModulePresentation::cyclic(z4.clone(), Value::int(2)), cutoff)?);
    show("projdim_ℤ ℤ/6", &projdim_module(&ModulePresentation::cyclic(z, Value::int(6)), cutoff)?);

    let a = koszul_dg_ring(RingSpec::integers_mod(8)?, vec![Value::int(2)])?;
    let m = SemiFreeDGModule::unit(&a);
    show("injdim Kos(ℤ/8; 2)", &injdim_dg(&a, &m, cutoff)?);
    show("flatdim Kos(ℤ/8; 2)", &flatdim_dg(&a, &m, cutoff)?);
    let c = SemiFreeDGModule::cone_of_scalar(&a, &Value::int(4));
    show("flatdim cone(4) over Kos", &flatdim_dg(&a, &c, cutoff)?);
    Ok(())
}
