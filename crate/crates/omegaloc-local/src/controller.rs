//! Local controllers as quotients of a supervisor by a control congruence.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use omegaloc_core::ops::explore;
use omegaloc_core::{Automaton, EventId, Kind, StateId};

use crate::congruence::{build_congruence, build_congruence_from, validate_congruence, ControlCongruence};
use crate::error::Result;
use crate::profile::{profile_liveness, profile_safety, EnableDisableProfile, Part, Scope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ControllerKind {
    Safety,
    Liveness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalController {
    pub automaton: Automaton,
    pub event: EventId,
    pub kind: ControllerKind,
    pub part: Part,
    /// Cell `i` is controller state `i`.
    pub congruence: ControlCongruence,
}

impl LocalController {
    /// `loc_<event>_safety`, `loc_<event>_live_c1`, `loc_<event>_live_c2`;
    /// undivided liveness controllers get `loc_<event>_live`.
    pub fn file_stem(&self) -> String {
        let label = self.automaton.alphabet().label(self.event);
        match (self.kind, self.part) {
            (ControllerKind::Safety, _) => format!("loc_{label}_safety"),
            (ControllerKind::Liveness, Part::None) => format!("loc_{label}_live"),
            (ControllerKind::Liveness, p) => format!("loc_{label}_live_{p}"),
        }
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }
}

/// Quotient of `sup` by `cong`: ζ(i, σ) = j iff some state of cell i has its
/// σ-successor in cell j. Controller states are numbered in BFS order and
/// the congruence is renumbered to match.
pub fn build_local_controller(
    sup: &Automaton,
    cong: &ControlCongruence,
    event: EventId,
    kind: ControllerKind,
    part: Part,
) -> LocalController {
    let al = sup.alphabet();
    let name = match kind {
        ControllerKind::Safety => format!("LOC*_{}", al.label(event)),
        ControllerKind::Liveness => format!("LOC^w_{}_{part}", al.label(event)),
    };
    let Some(x0) = sup.initial() else {
        return LocalController {
            automaton: Automaton::empty(name, Kind::Star, al.clone()),
            event,
            kind,
            part,
            congruence: cong.clone(),
        };
    };
    let (automaton, keys) = explore(&name, Kind::Star, al, cong.index[x0], |&i, e| {
        cong.cells[i].iter().find_map(|&x| sup.next(x, e)).map(|t| cong.index[t])
    });
    let mut order = keys.clone();
    // cells unreachable in the quotient (unreachable supervisor states) go last
    order.extend((0..cong.num_cells()).filter(|i| !keys.contains(i)));
    let cells: Vec<Vec<StateId>> = order.iter().map(|&i| cong.cells[i].clone()).collect();
    let mut index = vec![0; cong.index.len()];
    for (i, cell) in cells.iter().enumerate() {
        for &x in cell {
            index[x] = i;
        }
    }
    LocalController { automaton, event, kind, part, congruence: ControlCongruence { cells, index } }
}

/// One state with a self-loop on every event.
fn universal(sup: &Automaton, event: EventId, part: Part) -> LocalController {
    let al = sup.alphabet();
    let mut a = Automaton::new(format!("LOC^w_{}_{part}", al.label(event)), Kind::Star, al.clone(), 1);
    for e in al.ids() {
        a.set(0, e, 0);
    }
    let n = sup.num_states();
    LocalController {
        automaton: a,
        event,
        kind: ControllerKind::Liveness,
        part,
        congruence: ControlCongruence::from_labels(&vec![0; n]),
    }
}

/// D^ω_α over every string of G^{f*}, ignoring the C1/C2 split.
pub fn undivided_profile(controlled_plant: &Automaton, sup: &Automaton, alpha: EventId) -> Result<EnableDisableProfile> {
    let mut p = profile_safety(controlled_plant, sup, alpha)?;
    p.part = Part::None;
    Ok(p)
}

/// The full controller set, plus the undivided liveness controllers used as
/// a size reference for the part split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    /// Per controllable event: safety, liveness C1, liveness C2.
    pub controllers: Vec<LocalController>,
    pub undivided: Vec<LocalController>,
}

impl Localization {
    pub fn safety(&self) -> impl Iterator<Item = &LocalController> {
        self.controllers.iter().filter(|c| c.kind == ControllerKind::Safety)
    }

    pub fn liveness(&self) -> impl Iterator<Item = &LocalController> {
        self.controllers.iter().filter(|c| c.kind == ControllerKind::Liveness)
    }

    pub fn find(&self, event: EventId, kind: ControllerKind, part: Part) -> Option<&LocalController> {
        self.controllers
            .iter()
            .find(|c| c.event == event && c.kind == kind && c.part == part)
    }
}

/// Localize SUP* (w.r.t. the plant) and SUP^ω (w.r.t. G^{f*}) for every
/// controllable event. `tracker`/`sink` classify strings into C1 = pre(A)
/// and C2.
pub fn localize_all(
    plant: &Automaton,
    sup_star: &Automaton,
    controlled_plant: &Automaton,
    sup_omega: &Automaton,
    tracker: &Automaton,
    sink: Option<StateId>,
) -> Result<Localization> {
    let al = sup_star.alphabet();
    let c2_reached = reaches_sink(sup_omega, tracker, sink);
    let mut controllers = Vec::new();
    let mut undivided = Vec::new();
    for alpha in al.controllable() {
        let p = profile_safety(plant, sup_star, alpha)?;
        let cong = build_congruence(sup_star, &p)?;
        controllers.push(build_local_controller(sup_star, &cong, alpha, ControllerKind::Safety, Part::None));

        let pu = undivided_profile(controlled_plant, sup_omega, alpha)?;
        let cu = build_congruence(sup_omega, &pu)?;
        for part in [Part::C1, Part::C2] {
            if part == Part::C2 && !c2_reached {
                controllers.push(universal(sup_omega, alpha, part));
                continue;
            }
            let scope = Scope { tracker, sink, part };
            let pp = profile_liveness(controlled_plant, sup_omega, alpha, &scope)?;
            // D_{α,n} ≤ D_α, so the undivided congruence is valid here too and
            // can only be coarsened further
            let direct = build_congruence(sup_omega, &pp)?;
            let coarsened = build_congruence_from(sup_omega, &pp, &cu)?;
            let best = if coarsened.num_cells() < direct.num_cells() { coarsened } else { direct };
            validate_congruence(sup_omega, &pp, &best)?;
            controllers.push(build_local_controller(sup_omega, &best, alpha, ControllerKind::Liveness, part));
        }
        undivided.push(build_local_controller(sup_omega, &cu, alpha, ControllerKind::Liveness, Part::None));
        log::debug!(
            "{}: safety {} states, undivided liveness {}",
            al.label(alpha),
            controllers[controllers.len() - 3].num_states(),
            cu.num_cells()
        );
    }
    Ok(Localization { controllers, undivided })
}

fn reaches_sink(sup: &Automaton, tracker: &Automaton, sink: Option<StateId>) -> bool {
    let (Some(x0), Some(z0), Some(sink)) = (sup.initial(), tracker.initial(), sink) else {
        return false;
    };
    let (_, keys) = explore("reach", Kind::Star, sup.alphabet(), (x0, z0), |&(x, z), e| {
        Some((sup.next(x, e)?, tracker.next(z, e)?))
    });
    keys.iter().any(|&(_, z)| z == sink)
}

/// Exact check of the controller property for `loc`: for every s ∈ L(parent)
/// in scope, sα ∈ L(loc) ∧ sα ∈ L(plant) ⇔ sα ∈ L(parent). Returns the
/// shortest s where it fails.
pub fn check_controller_property(
    loc: &LocalController,
    plant: &Automaton,
    parent: &Automaton,
    scope: Option<&Scope<'_>>,
) -> Result<Option<Vec<EventId>>> {
    let al = parent.alphabet();
    al.require_same(plant.alphabet(), "plant and supervisor must share one alphabet")?;
    al.require_same(loc.automaton.alphabet(), "controller and supervisor must share one alphabet")?;
    let alpha = loc.event;
    type Key = (StateId, StateId, Option<StateId>, Option<StateId>);
    let (Some(x0), Some(y0)) = (parent.initial(), plant.initial()) else {
        return Ok(None);
    };
    let start: Key = (x0, y0, loc.automaton.initial(), scope.and_then(|s| s.tracker.initial()));
    let mut parent_of: HashMap<Key, Option<(Key, EventId)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(k @ (x, y, l, z)) = queue.pop_front() {
        let in_scope = match (scope, z) {
            (Some(s), Some(z)) => s.admits(z),
            (Some(_), None) => false,
            (None, _) => true,
        };
        if in_scope {
            let lhs = l.and_then(|l| loc.automaton.next(l, alpha)).is_some() && plant.next(y, alpha).is_some();
            if lhs != parent.next(x, alpha).is_some() {
                let mut word = Vec::new();
                let mut cur = k;
                while let Some(Some((prev, e))) = parent_of.get(&cur) {
                    word.push(*e);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
        }
        for e in al.ids() {
            let Some(x2) = parent.next(x, e) else { continue };
            let Some(y2) = plant.next(y, e) else { continue };
            let l2 = l.and_then(|l| loc.automaton.next(l, e));
            let z2 = match (scope, z) {
                (Some(s), Some(z)) => s.tracker.next(z, e),
                _ => None,
            };
            let key = (x2, y2, l2, z2);
            if let std::collections::hash_map::Entry::Vacant(v) = parent_of.entry(key) {
                v.insert(Some((k, e)));
                queue.push_back(key);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use omegaloc_core::lang::star_equal;
    use omegaloc_core::Alphabet;

    fn chain() -> Automaton {
        let al = Alphabet::from_pairs(&[("a", true), ("b", true)]).unwrap();
        let mut s = Automaton::new("S", Kind::Star, al, 3);
        s.set(0, 0, 1);
        s.set(1, 1, 2);
        s.set(2, 0, 0);
        s
    }

    #[test]
    fn single_cell_gives_self_loops() {
        let s = chain();
        let cong = ControlCongruence::from_labels(&[0, 0, 0]);
        let loc = build_local_controller(&s, &cong, 0, ControllerKind::Safety, Part::None);
        assert_eq!(loc.num_states(), 1);
        assert_eq!(loc.automaton.num_transitions(), 2);
        assert_eq!(loc.file_stem(), "loc_a_safety");
    }

    #[test]
    fn identity_gives_the_supervisor_back() {
        let s = chain();
        let loc = build_local_controller(&s, &ControlCongruence::identity(3), 1, ControllerKind::Liveness, Part::C2);
        assert!(star_equal(&loc.automaton, &s).unwrap().is_none());
        assert_eq!(loc.num_states(), 3);
        assert_eq!(loc.file_stem(), "loc_b_live_c2");
    }
}
