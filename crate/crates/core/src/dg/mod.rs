//! Koszul DG-rings, semi-free DG-modules over them, and the two reduction
//! primitives `Ā ⊗^L_A M` and `RHom_A(Ā, M)`.

pub mod module;
pub mod resolution;
pub mod ring;

pub use module::{dg_tensor, hom_a, tensor_base_complex, BasisElement, SemiFreeDGModule};
pub use resolution::{
    resolve_cyclic, rhom_cyclic, rhom_from_h0, tate_resolution, Budget, RHomTable, Resolution,
};
pub use ring::{h0_ring, koszul_dg_ring, DGRingPresentation, H0Ring, KoszulElement};

use crate::error::{invalid, Result};

pub(crate) fn same_dg_ring(a: &DGRingPresentation, b: &DGRingPresentation) -> Result<()> {
    if a != b {
        return invalid(format!("DG-ring mismatch: {a} vs {b}"));
    }
    Ok(())
}
