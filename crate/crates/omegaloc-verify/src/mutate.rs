//! Single-transition mutations of a controller set.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omegaloc_core::{EventId, StateId};
use omegaloc_local::LocalController;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    Delete { controller: usize, state: StateId, event: EventId },
    Add { controller: usize, state: StateId, event: EventId, target: StateId },
}

pub fn apply(controllers: &[LocalController], m: Mutation) -> Vec<LocalController> {
    let mut out = controllers.to_vec();
    match m {
        Mutation::Delete { controller, state, event } => out[controller].automaton.remove(state, event),
        Mutation::Add { controller, state, event, target } => out[controller].automaton.set(state, event, target),
    }
    out
}

/// `count` distinct mutations, half deletions of existing transitions and
/// half additions of a controller's own event at states where it is
/// undefined and `add_ok(controller, state)` holds. Falls back to the other
/// kind when one runs out.
pub fn random_mutations(
    controllers: &[LocalController],
    count: usize,
    seed: u64,
    add_ok: impl Fn(usize, StateId) -> bool,
) -> Vec<Mutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deletes = Vec::new();
    let mut adds = Vec::new();
    for (k, c) in controllers.iter().enumerate() {
        let a = &c.automaton;
        for (state, event, _) in a.transitions() {
            deletes.push(Mutation::Delete { controller: k, state, event });
        }
        for state in a.states() {
            if a.next(state, c.event).is_none() && add_ok(k, state) {
                let target = rng.gen_range(0..a.num_states());
                adds.push(Mutation::Add { controller: k, state, event: c.event, target });
            }
        }
    }
    deletes.shuffle(&mut rng);
    adds.shuffle(&mut rng);
    let mut out = Vec::with_capacity(count);
    let (mut d, mut a) = (deletes.into_iter(), adds.into_iter());
    while out.len() < count {
        let first = if out.len() % 2 == 0 { d.next() } else { a.next() };
        match first.or_else(|| d.next()).or_else(|| a.next()) {
            Some(m) => out.push(m),
            None => break,
        }
    }
    out
}
