//! Supervisor localization.
//!
//! Each controllable event gets one safety local controller, reproducing the
//! disablements of SUP*, and two liveness local controllers, reproducing the
//! disablements of SUP^ω after strings in pre(A) and after the remaining
//! strings of G^{f*}. A controller is the quotient of its parent supervisor
//! by a control congruence: a partition whose cells never mix "α enabled"
//! with "α must be disabled" and which is closed under transitions.

pub mod congruence;
pub mod controller;
pub mod error;
pub mod profile;

pub use congruence::{build_congruence, build_congruence_from, validate_congruence, ControlCongruence};
pub use controller::{
    build_local_controller, check_controller_property, localize_all, undivided_profile, ControllerKind,
    LocalController, Localization,
};
pub use error::{LocalError, Result};
pub use profile::{consistent, profile_liveness, profile_safety, EnableDisableProfile, Part, Scope};
