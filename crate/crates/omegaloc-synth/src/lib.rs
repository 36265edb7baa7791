//! Supervisor synthesis.
//!
//! [`safety`] computes the supremal *-controllable sublanguage of a
//! *-specification and the controlled plant G^{f*}; [`omega`] builds, on top
//! of G^{f*}, a liveness supervisor enforcing a Rabin legal specification
//! while admitting at least a minimal acceptable ω-behaviour.

pub mod error;
pub mod omega;
pub mod plant;
pub mod safety;

pub use error::{Result, SynthError};
pub use omega::{
    assemble_fomega, build_rabin_buchi, controllability_subset, controllability_subset_excluding, existence_check,
    inf_closure, pre_a_tracker, restrict_sup, uncontrollable_exits,
    ControllabilityResult, Existence, ExistenceProof, OmegaSupervisor,
};
pub use plant::{compose_plant, compose_spec};
pub use safety::{
    check_star_controllability, controlled_plant, sup_con_star, sup_con_star_seeded, SafetySupervisor, Violation,
};
