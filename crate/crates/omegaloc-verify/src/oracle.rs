//! Exhaustive oracles for small instances.

use omegaloc_core::graph::{is_nontrivial, sccs};
use omegaloc_core::{Automaton, EventId, StateId, StateSet};
use omegaloc_local::{consistent, validate_congruence, ControlCongruence, EnableDisableProfile};
use omegaloc_synth::SynthError;

use crate::error::{Result, VerifyError};

pub const MAX_CONGRUENCE_STATES: usize = 8;
pub const MAX_CONTROL_STATES: usize = 6;

/// A control congruence with the fewest cells, by enumerating every
/// partition (restricted growth strings, pruned by pairwise consistency).
/// Ties go to the first partition in enumeration order.
pub fn brute_force_min_congruence(sup: &Automaton, p: &EnableDisableProfile) -> Result<ControlCongruence> {
    let n = sup.num_states();
    if n > MAX_CONGRUENCE_STATES {
        return Err(VerifyError::TooLarge { got: n, limit: MAX_CONGRUENCE_STATES });
    }
    let mut labels = vec![0; n];
    let mut best: Option<ControlCongruence> = None;
    search(sup, p, &mut labels, 0, 0, &mut best);
    Ok(best.unwrap_or_else(|| ControlCongruence::identity(n)))
}

fn search(
    sup: &Automaton,
    p: &EnableDisableProfile,
    labels: &mut [usize],
    x: usize,
    used: usize,
    best: &mut Option<ControlCongruence>,
) {
    if best.as_ref().is_some_and(|b| used >= b.num_cells()) {
        return;
    }
    if x == labels.len() {
        let c = ControlCongruence::from_labels(labels);
        if validate_congruence(sup, p, &c).is_ok() {
            *best = Some(c);
        }
        return;
    }
    for cell in 0..=used {
        if (0..x).any(|y| labels[y] == cell && !consistent(p, x, y)) {
            continue;
        }
        labels[x] = cell;
        search(sup, p, labels, x + 1, used.max(cell + 1), best);
    }
}

/// C^𝒜 by enumerating every memoryless control-pattern assignment. A state
/// wins if under some assignment every reachable state has a nonempty
/// pattern and reaches a Büchi-carrying cycle, every Büchi-carrying cycle
/// stays inside I, and no Büchi-carrying cycle avoids R.
pub fn brute_force_controllability(a: &Automaton) -> Result<StateSet> {
    let n = a.num_states();
    if n > MAX_CONTROL_STATES {
        return Err(VerifyError::TooLarge { got: n, limit: MAX_CONTROL_STATES });
    }
    let pair = match a.rabin.as_slice() {
        [p] => p.clone(),
        ps => return Err(SynthError::MultiPair(a.name.clone(), ps.len()).into()),
    };
    let al = a.alphabet();
    let options: Vec<Vec<Vec<EventId>>> = (0..n)
        .map(|q| {
            let unc: Vec<EventId> = a.enabled(q).filter(|&e| !al.is_controllable(e)).collect();
            let ctl: Vec<EventId> = a.enabled(q).filter(|&e| al.is_controllable(e)).collect();
            (0..1usize << ctl.len())
                .map(|mask| {
                    let mut p = unc.clone();
                    p.extend(ctl.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e));
                    p
                })
                .filter(|p| !p.is_empty())
                .collect()
        })
        .collect();

    let mut win = StateSet::new();
    let mut choice = vec![0usize; n];
    loop {
        let phi: Vec<Option<&Vec<EventId>>> = (0..n).map(|q| options[q].get(choice[q])).collect();
        for q0 in 0..n {
            if !win.contains(&q0) && wins(a, &phi, q0, &pair.r, &pair.i) {
                win.insert(q0);
            }
        }
        // next assignment (odometer over the option lists)
        let mut k = 0;
        loop {
            if k == n {
                return Ok(win);
            }
            choice[k] += 1;
            if choice[k] < options[k].len().max(1) {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn wins(a: &Automaton, phi: &[Option<&Vec<EventId>>], q0: StateId, r: &StateSet, i: &StateSet) -> bool {
    let n = a.num_states();
    let succ = |q: StateId| -> Vec<StateId> {
        phi[q].map_or(Vec::new(), |p| p.iter().map(|&e| a.next(q, e).unwrap()).collect())
    };
    let mut reach = vec![false; n];
    reach[q0] = true;
    let mut stack = vec![q0];
    while let Some(q) = stack.pop() {
        if phi[q].is_none() {
            return false;
        }
        for t in succ(q) {
            if !reach[t] {
                reach[t] = true;
                stack.push(t);
            }
        }
    }
    let mut good = vec![false; n];
    for comp in sccs(n, &reach, &succ) {
        if is_nontrivial(&comp, &succ) && comp.iter().any(|q| a.buchi.contains(q)) {
            if comp.iter().any(|q| !i.contains(q)) {
                return false;
            }
            for &q in &comp {
                good[q] = true;
            }
        }
    }
    let no_r: Vec<bool> = (0..n).map(|q| reach[q] && !r.contains(&q)).collect();
    for comp in sccs(n, &no_r, &succ) {
        if is_nontrivial(&comp, &succ) && comp.iter().any(|q| a.buchi.contains(q)) {
            return false;
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..n {
            if reach[q] && !good[q] && succ(q).iter().any(|&t| good[t]) {
                good[q] = true;
                changed = true;
            }
        }
    }
    (0..n).all(|q| !reach[q] || good[q])
}
