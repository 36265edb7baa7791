//! Checks that a set of local controllers reproduces the monolithic
//! supervisors, plus the oracles and harnesses backing them.
//!
//! Finite behaviour is compared exactly (synchronous product against the
//! supervisor). Infinite behaviour follows from the finite equality because
//! lim distributes over intersection of prefix-closed languages; that premise
//! is re-checked on the automata, and seeded lassos are sampled on top.

pub mod equivalence;
pub mod error;
pub mod limit_meet;
pub mod mutate;
pub mod oracle;
pub mod stages;

pub use equivalence::{
    check_controller_properties, check_finite_equivalence, check_infinite_equivalence, EquivalenceReport, Witness,
};
pub use error::{Result, VerifyError};
pub use limit_meet::{limit_meet_harness, LimitMeetReport};
pub use mutate::{apply, random_mutations, Mutation};
pub use oracle::{brute_force_controllability, brute_force_min_congruence};
pub use stages::{random_toy_pipeline, run_stages, toy_pipelines, Artifacts};
