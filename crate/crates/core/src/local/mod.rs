//! Local cohomology and derived completion through telescope truncations.

mod classical;
pub(crate) mod stable;
mod telescope;

pub use classical::{classical_gamma, classical_lambda, CompletionTruncation};
pub use stable::{
    completion_image, completion_limit, completion_mod_power, derived_mod, gm_adjunction_check, llambda,
    llambda_mod_power, llambda_module, llambda_stabilized, power_ideal, precision_order, rgamma,
    rgamma_module, rgamma_stabilized, stabilize, torsion_colimit, torsion_colimit_of_table, torsion_image,
    Stability, StabilizedCohomology,
};
pub use telescope::{
    build_telescope, canonical_map_exists, telescope_base_change, ReducedTelescope, TelescopeTruncation,
};
