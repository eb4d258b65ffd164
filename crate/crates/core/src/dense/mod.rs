//! Dense-orbit elements: the minimal element `q`, orbit-density checks, the
//! maximal element `r`, and checkable specialization witnesses.

pub mod kernel;
mod maximal;
mod minimal;
mod omega;
mod orbit;
mod search;
mod witness;

pub use maximal::{maximal_r, maximal_specializer, slot_insert, PairingInjection};
pub use minimal::{block_vector, linear_prefix, minimal_q, prefix_minimal_q, specializer_to_target, SymVector};
pub use omega::{omega_check, omega_witness, OmegaReport};
pub use orbit::{orbit_image_full_check, OrbitMode, OrbitOutcome};
pub use search::minimal_specializer_search;
pub use witness::SpecializationWitness;
