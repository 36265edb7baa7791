//! Structural operations: products, trimming, totalisation, minimisation and
//! finite runs.

use std::collections::HashMap;
use std::hash::Hash;

use crate::alphabet::{Alphabet, EventId};
use crate::automaton::{Automaton, Kind, RabinPair, StateId, StateSet};
use crate::error::{Error, Result};

/// Breadth-first exploration from `init`, numbering states in discovery
/// order with events taken in alphabet (lexicographic) order. `step` returns
/// the successor key, or `None` when the event is blocked. Returns the keys in
/// id order together with the transition structure.
pub fn explore<K, F>(
    name: &str,
    kind: Kind,
    alphabet: &Alphabet,
    init: K,
    mut step: F,
) -> (Automaton, Vec<K>)
where
    K: Clone + Eq + Hash,
    F: FnMut(&K, EventId) -> Option<K>,
{
    let mut keys = vec![init.clone()];
    let mut index: HashMap<K, StateId> = HashMap::from([(init, 0)]);
    let mut edges: Vec<(StateId, EventId, StateId)> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        for e in alphabet.ids() {
            if let Some(next) = step(&keys[i], e) {
                let t = match index.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = keys.len();
                        index.insert(next.clone(), t);
                        keys.push(next);
                        t
                    }
                };
                edges.push((i, e, t));
            }
        }
        i += 1;
    }
    let mut a = Automaton::new(name, kind, alphabet.clone(), keys.len());
    for (q, e, t) in edges {
        a.set(q, e, t);
    }
    (a, keys)
}

/// Restrict to states reachable from the initial state and renumber them in
/// BFS order. Acceptance sets follow the renumbering. The language (of every
/// layer) is unchanged.
pub fn reachable_trim(a: &Automaton) -> Automaton {
    trim_with_map(a).0
}

/// Like [`reachable_trim`], also returning the old id of every new state.
pub fn trim_with_map(a: &Automaton) -> (Automaton, Vec<StateId>) {
    let Some(q0) = a.initial() else {
        return (a.clone(), Vec::new());
    };
    let (mut t, old) = explore(&a.name, a.kind, a.alphabet(), q0, |&q, e| a.next(q, e));
    let mut new_of = vec![usize::MAX; a.num_states()];
    for (n, &o) in old.iter().enumerate() {
        new_of[o] = n;
    }
    let map_set = |s: &StateSet| -> StateSet {
        s.iter()
            .filter(|&&q| new_of[q] != usize::MAX)
            .map(|&q| new_of[q])
            .collect()
    };
    t.buchi = map_set(&a.buchi);
    t.rabin = a
        .rabin
        .iter()
        .map(|p| RabinPair {
            r: map_set(&p.r),
            i: map_set(&p.i),
        })
        .collect();
    (t, old)
}

/// Keep only the states with `keep[q]`; transitions into removed states are
/// dropped. The result is trimmed. If the initial state is removed the result
/// is empty.
pub fn restrict(a: &Automaton, keep: &[bool]) -> Automaton {
    match a.initial() {
        Some(q0) if keep[q0] => {}
        _ => {
            let mut e = Automaton::empty(&a.name, a.kind, a.alphabet().clone());
            e.rabin = vec![RabinPair::default(); a.rabin.len()];
            return e;
        }
    }
    let mut b = a.clone();
    for q in a.states() {
        for e in a.alphabet().ids() {
            if let Some(t) = a.next(q, e) {
                if !keep[q] || !keep[t] {
                    b.remove(q, e);
                }
            }
        }
    }
    reachable_trim(&b)
}

/// Result of [`totalize`]: the total automaton and the added sink, if any.
#[derive(Clone, Debug)]
pub struct Totalized {
    pub automaton: Automaton,
    pub sink: Option<StateId>,
}

/// Make the transition function total by adding one sink state (never
/// accepting, self-looped on every event). An already total automaton is
/// returned unchanged.
pub fn totalize(a: &Automaton) -> Totalized {
    if a.is_total() && !a.is_empty() {
        return Totalized {
            automaton: a.clone(),
            sink: None,
        };
    }
    let mut t = a.clone();
    let sink = t.add_state();
    for q in t.states() {
        for e in t.alphabet().ids() {
            if t.next(q, e).is_none() {
                t.set(q, e, sink);
            }
        }
    }
    if a.is_empty() {
        t.set_initial(sink);
    }
    for p in &mut t.rabin {
        // the sink stays out of R; adding it to I would only matter for runs
        // that never leave it, and those must be rejected
        p.i.remove(&sink);
    }
    Totalized {
        automaton: t,
        sink: Some(sink),
    }
}

/// Re-express `a` over a larger alphabet: events of `global` that `a` does not
/// know are self-looped at every state.
pub fn lift_alphabet(a: &Automaton, global: &Alphabet) -> Result<Automaton> {
    if !global.includes(a.alphabet()) {
        return Err(Error::AlphabetMismatch(format!(
            "`{}` uses events outside the target alphabet",
            a.name
        )));
    }
    let mut b = Automaton::new(&a.name, a.kind, global.clone(), a.num_states());
    if let Some(q0) = a.initial() {
        b.set_initial(q0);
    }
    for q in a.states() {
        for g in global.ids() {
            match a.alphabet().index(global.label(g)) {
                Some(e) => {
                    if let Some(t) = a.next(q, e) {
                        b.set(q, g, t);
                    }
                }
                None => b.set(q, g, q),
            }
        }
    }
    b.buchi = a.buchi.clone();
    b.rabin = a.rabin.clone();
    Ok(b)
}

/// Synchronous product. An event shared by several components moves all of
/// them; a component whose alphabet lacks the event stays put. Only
/// reachable product states are built. The result is a *-automaton over
/// `global`.
pub fn sync_product(components: &[&Automaton], global: &Alphabet) -> Result<Automaton> {
    let mut local: Vec<Vec<Option<EventId>>> = Vec::with_capacity(components.len());
    for c in components {
        for ev in c.alphabet().events() {
            match global.index(&ev.label) {
                None => return Err(Error::UnknownEvent(ev.label.clone())),
                Some(g) if global.is_controllable(g) != ev.controllable => {
                    return Err(Error::AlphabetMismatch(format!(
                        "controllability of `{}` differs in `{}`",
                        ev.label, c.name
                    )))
                }
                Some(_) => {}
            }
        }
        local.push(global.ids().map(|g| c.alphabet().index(global.label(g))).collect());
    }
    let name = components
        .iter()
        .map(|c| c.name.as_str())
        .collect::<Vec<_>>()
        .join("||");
    if components.iter().any(|c| c.is_empty()) {
        return Ok(Automaton::empty(name, Kind::Star, global.clone()));
    }
    let init: Vec<StateId> = components.iter().map(|c| c.initial().unwrap()).collect();
    let (a, _) = explore(&name, Kind::Star, global, init, |qs, g| {
        let mut next = Vec::with_capacity(qs.len());
        for (k, c) in components.iter().enumerate() {
            match local[k][g] {
                Some(e) => next.push(c.next(qs[k], e)?),
                None => next.push(qs[k]),
            }
        }
        Some(next)
    });
    Ok(a)
}

/// Product of two automata over one alphabet, keeping the transition
/// structure only (a *-automaton for L(a) ∩ L(b)). Also returns the state
/// pairs.
pub fn meet(a: &Automaton, b: &Automaton) -> Result<(Automaton, Vec<(StateId, StateId)>)> {
    a.alphabet()
        .require_same(b.alphabet(), "meet operands must share one alphabet")?;
    let name = format!("{}&{}", a.name, b.name);
    match (a.initial(), b.initial()) {
        (Some(p0), Some(q0)) => Ok(explore(&name, Kind::Star, a.alphabet(), (p0, q0), |&(p, q), e| {
            Some((a.next(p, e)?, b.next(q, e)?))
        })),
        _ => Ok((Automaton::empty(name, Kind::Star, a.alphabet().clone()), Vec::new())),
    }
}

/// Intersection of two deterministic Büchi languages.
///
/// Uses the two-phase counter construction: the counter waits for an
/// accepting state of `a` (phase 0), then for one of `b` (phase 1); states in
/// phase 0 whose `a` component is accepting form the Büchi set. When one
/// operand accepts everywhere the counter is unnecessary and the other
/// operand's set is lifted directly.
pub fn buchi_intersection(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    a.alphabet()
        .require_same(b.alphabet(), "Büchi intersection operands must share one alphabet")?;
    let name = format!("{}&{}", a.name, b.name);
    let (Some(p0), Some(q0)) = (a.initial(), b.initial()) else {
        return Ok(Automaton::empty(name, Kind::Buchi, a.alphabet().clone()));
    };
    let a_all = a.buchi.len() == a.num_states();
    let b_all = b.buchi.len() == b.num_states();
    let (mut out, keys) = explore(&name, Kind::Buchi, a.alphabet(), (p0, q0, 0u8), |&(p, q, c), e| {
        let (p2, q2) = (a.next(p, e)?, b.next(q, e)?);
        let c2 = if a_all || b_all {
            0
        } else if c == 0 {
            u8::from(a.buchi.contains(&p))
        } else if b.buchi.contains(&q) {
            0
        } else {
            1
        };
        Some((p2, q2, c2))
    });
    out.buchi = keys
        .iter()
        .enumerate()
        .filter(|(_, &(p, q, c))| {
            if a_all {
                b.buchi.contains(&q)
            } else if b_all {
                a.buchi.contains(&p)
            } else {
                c == 0 && a.buchi.contains(&p)
            }
        })
        .map(|(i, _)| i)
        .collect();
    Ok(out)
}

/// Minimal deterministic automaton for the prefix-closed *-language of `a`
/// (Moore partition refinement on the trimmed automaton). Acceptance sets are
/// dropped.
pub fn minimize_star(a: &Automaton) -> Automaton {
    minimize_star_with_map(a).0
}

/// [`minimize_star`], also returning for every state of `a` its state in the
/// result (`None` for unreachable states).
pub fn minimize_star_with_map(a: &Automaton) -> (Automaton, Vec<Option<StateId>>) {
    let (t, old) = trim_with_map(&a.with_kind(Kind::Star));
    let classes = refine(&t, vec![0; t.num_states()]);
    let (m, keys) = quotient(&t, &classes);
    let pos: HashMap<usize, StateId> = keys.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut map = vec![None; a.num_states()];
    for (q, &o) in old.iter().enumerate() {
        map[o] = Some(pos[&classes[q]]);
    }
    (m, map)
}

/// Coarsest partition refining `init` that is compatible with the transition
/// structure (equal classes have equal definedness and successor classes).
pub fn refine(a: &Automaton, init: Vec<usize>) -> Vec<usize> {
    let mut class = init;
    loop {
        let mut sig_index: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
        let mut next = vec![0; a.num_states()];
        for q in a.states() {
            let sig: Vec<Option<usize>> = a
                .alphabet()
                .ids()
                .map(|e| a.next(q, e).map(|t| class[t]))
                .collect();
            let n = sig_index.len();
            next[q] = *sig_index.entry((class[q], sig)).or_insert(n);
        }
        let before = class.iter().collect::<std::collections::HashSet<_>>().len();
        if sig_index.len() == before {
            return next;
        }
        class = next;
    }
}

fn quotient(a: &Automaton, class: &[usize]) -> (Automaton, Vec<usize>) {
    let Some(q0) = a.initial() else {
        return (a.clone(), Vec::new());
    };
    let mut rep: HashMap<usize, StateId> = HashMap::new();
    for q in a.states() {
        rep.entry(class[q]).or_insert(q);
    }
    explore(&a.name, Kind::Star, a.alphabet(), class[q0], |&c, e| {
        a.next(rep[&c], e).map(|t| class[t])
    })
}

/// The state reached by `word`, or `None` if the run falls off δ.
pub fn run_star(a: &Automaton, word: &[EventId]) -> Option<StateId> {
    let mut q = a.initial()?;
    for &e in word {
        q = a.next(q, e)?;
    }
    Some(q)
}

/// [`run_star`] on event labels.
pub fn run_labels(a: &Automaton, word: &[&str]) -> Result<Option<StateId>> {
    let w = a.alphabet().word(word)?;
    Ok(run_star(a, &w))
}
