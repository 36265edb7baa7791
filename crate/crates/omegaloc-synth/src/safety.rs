//! Supremal *-controllable sublanguage and the safety supervisor.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omegaloc_core::ops::{meet, minimize_star_with_map, trim_with_map};
use omegaloc_core::{Automaton, EventId, Kind, StateId, StateSet};

use crate::error::Result;

/// SUP*: a *-automaton for the supremal controllable sublanguage, plus the
/// Büchi states lifted from the plant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetySupervisor {
    pub automaton: Automaton,
    pub buchi_lift: StateSet,
}

impl SafetySupervisor {
    /// The supremal element is the empty language.
    pub fn is_empty(&self) -> bool {
        self.automaton.is_empty()
    }
}

/// Compute SUP* for `plant` under the *-specification `spec` (same alphabet).
pub fn sup_con_star(plant: &Automaton, spec: &Automaton) -> Result<SafetySupervisor> {
    sup_con_star_inner(plant, spec, None)
}

/// As [`sup_con_star`] with the pruning worklist shuffled by `seed`. The
/// result does not depend on the order.
pub fn sup_con_star_seeded(plant: &Automaton, spec: &Automaton, seed: u64) -> Result<SafetySupervisor> {
    sup_con_star_inner(plant, spec, Some(seed))
}

fn sup_con_star_inner(plant: &Automaton, spec: &Automaton, seed: Option<u64>) -> Result<SafetySupervisor> {
    let (prod, pairs) = meet(&plant.with_kind(Kind::Star), &spec.with_kind(Kind::Star))?;
    let n = prod.num_states();
    let al = prod.alphabet().clone();

    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (s, _, t) in prod.transitions() {
        preds[t].push(s);
    }
    let mut alive = vec![true; n];
    let violates = |s: StateId, alive: &[bool]| -> bool {
        let p = pairs[s].0;
        al.uncontrollable().any(|u| {
            plant.next(p, u).is_some() && !matches!(prod.next(s, u), Some(t) if alive[t])
        })
    };
    let mut order: Vec<StateId> = (0..n).collect();
    if let Some(seed) = seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut work: VecDeque<StateId> = order.into();
    while let Some(s) = work.pop_front() {
        if alive[s] && violates(s, &alive) {
            alive[s] = false;
            // only predecessors can newly violate
            work.extend(preds[s].iter().copied().filter(|&p| alive[p]));
        }
    }

    let mut cut = prod.clone();
    for (s, e, t) in prod.transitions() {
        if !alive[s] || !alive[t] {
            cut.remove(s, e);
        }
    }
    let (pruned, old) = match prod.initial() {
        Some(q0) if alive[q0] => trim_with_map(&cut),
        _ => (Automaton::empty("SUP*", Kind::Star, al.clone()), Vec::new()),
    };
    let pair_of: Vec<(StateId, StateId)> = old.iter().map(|&s| pairs[s]).collect();

    let (mut sup, map) = minimize_star_with_map(&pruned);
    sup.name = "SUP*".into();
    let buchi_lift = pair_of
        .iter()
        .enumerate()
        .filter(|(_, &(p, _))| plant.buchi.contains(&p))
        .filter_map(|(x, _)| map[x])
        .collect();
    Ok(SafetySupervisor {
        automaton: sup,
        buchi_lift,
    })
}

/// G^{f*}: the supervisor's transition structure with the lifted Büchi set.
pub fn controlled_plant(sup: &SafetySupervisor) -> Automaton {
    let mut g = sup.automaton.with_kind(Kind::Buchi);
    g.buchi = sup.buchi_lift.clone();
    g.name = "G^f*".into();
    g
}

/// A string of K after which an uncontrollable plant event leaves K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub word: Vec<EventId>,
    pub event: EventId,
}

/// Exact check of pre(K)Σ_u ∩ L(plant) ⊆ pre(K) on the product; the
/// shortest violating string is returned.
pub fn check_star_controllability(plant: &Automaton, k: &Automaton) -> Result<Option<Violation>> {
    plant
        .alphabet()
        .require_same(k.alphabet(), "controllability check needs one alphabet")?;
    let (Some(p0), Some(k0)) = (plant.initial(), k.initial()) else {
        return Ok(None);
    };
    let mut parent: HashMap<(StateId, StateId), Option<((StateId, StateId), EventId)>> =
        HashMap::from([((p0, k0), None)]);
    let mut queue = VecDeque::from([(p0, k0)]);
    while let Some((p, q)) = queue.pop_front() {
        for e in plant.alphabet().ids() {
            let Some(p2) = plant.next(p, e) else { continue };
            match k.next(q, e) {
                Some(q2) => {
                    if let std::collections::hash_map::Entry::Vacant(v) = parent.entry((p2, q2)) {
                        v.insert(Some(((p, q), e)));
                        queue.push_back((p2, q2));
                    }
                }
                None if !plant.alphabet().is_controllable(e) => {
                    let mut word = Vec::new();
                    let mut cur = (p, q);
                    while let Some(Some((prev, ev))) = parent.get(&cur) {
                        word.push(*ev);
                        cur = *prev;
                    }
                    word.reverse();
                    return Ok(Some(Violation { word, event: e }));
                }
                None => {}
            }
        }
    }
    Ok(None)
}
