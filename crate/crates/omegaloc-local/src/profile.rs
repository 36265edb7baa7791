//! Enable/disable functions of a supervisor for one controllable event.

use std::fmt;

use serde::Serialize;

use omegaloc_core::ops::explore;
use omegaloc_core::{Automaton, EventId, Kind, StateId};

use crate::error::{LocalError, Result};

/// Which strings a liveness controller is responsible for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    /// Safety controllers: every string of the plant.
    None,
    /// Strings in pre(A).
    C1,
    /// Strings of G^{f*} outside pre(A).
    C2,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::None => "none",
            Part::C1 => "c1",
            Part::C2 => "c2",
        })
    }
}

/// Classifies strings into C1/C2 with a total tracker of pre(A): a string is
/// in pre(A) iff the tracker is not in `sink` after reading it.
#[derive(Clone, Copy, Debug)]
pub struct Scope<'a> {
    pub tracker: &'a Automaton,
    pub sink: Option<StateId>,
    pub part: Part,
}

impl Scope<'_> {
    pub fn admits(&self, z: StateId) -> bool {
        match self.part {
            Part::None => true,
            Part::C1 => Some(z) != self.sink,
            Part::C2 => Some(z) == self.sink,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnableDisableProfile {
    pub event: EventId,
    pub enable: Vec<bool>,
    pub disable: Vec<bool>,
    pub part: Part,
}

impl EnableDisableProfile {
    pub fn len(&self) -> usize {
        self.enable.len()
    }

    pub fn is_empty(&self) -> bool {
        self.enable.is_empty()
    }

    /// D ≡ 0.
    pub fn disables_nothing(&self) -> bool {
        !self.disable.iter().any(|&d| d)
    }
}

/// The pair (x, y) may share a cell.
pub fn consistent(p: &EnableDisableProfile, x: StateId, y: StateId) -> bool {
    !(p.enable[x] && p.disable[y]) && !(p.enable[y] && p.disable[x])
}

/// E*_α and D*_α of SUP* w.r.t. the plant's *-behaviour.
pub fn profile_safety(plant: &Automaton, sup: &Automaton, alpha: EventId) -> Result<EnableDisableProfile> {
    profile(plant, sup, alpha, None)
}

/// E^ω_α and D^ω_{α,n} of SUP^ω w.r.t. G^{f*}, counting only strings in the
/// scope's part. Reachability is decided on SUP^ω × G^{f*} × tracker.
pub fn profile_liveness(
    controlled_plant: &Automaton,
    sup: &Automaton,
    alpha: EventId,
    scope: &Scope<'_>,
) -> Result<EnableDisableProfile> {
    profile(controlled_plant, sup, alpha, Some(scope))
}

fn profile(plant: &Automaton, sup: &Automaton, alpha: EventId, scope: Option<&Scope<'_>>) -> Result<EnableDisableProfile> {
    let al = sup.alphabet();
    al.require_same(plant.alphabet(), "supervisor and plant must share one alphabet")?;
    if !al.is_controllable(alpha) {
        return Err(LocalError::Uncontrollable(al.label(alpha).to_string()));
    }
    let n = sup.num_states();
    let part = scope.map_or(Part::None, |s| s.part);
    let enable: Vec<bool> = (0..n).map(|x| sup.next(x, alpha).is_some()).collect();
    let mut disable = vec![false; n];
    let init = match (sup.initial(), plant.initial()) {
        (Some(x), Some(y)) => (x, y, scope.and_then(|s| s.tracker.initial())),
        _ => return Ok(EnableDisableProfile { event: alpha, enable, disable, part }),
    };
    let (_, keys) = explore("profile", Kind::Star, al, init, |&(x, y, z), e| {
        let z2 = match (scope, z) {
            (Some(s), Some(z)) => Some(s.tracker.next(z, e)?),
            _ => None,
        };
        Some((sup.next(x, e)?, plant.next(y, e)?, z2))
    });
    for (x, y, z) in keys {
        let in_part = match (scope, z) {
            (Some(s), Some(z)) => s.admits(z),
            (Some(_), None) => false,
            (None, _) => true,
        };
        if in_part && !enable[x] && plant.next(y, alpha).is_some() {
            disable[x] = true;
        }
    }
    Ok(EnableDisableProfile { event: alpha, enable, disable, part })
}
