//! Control congruences: partitions of supervisor states that respect
//! control consistency and are closed under transitions.

use serde::Serialize;

use omegaloc_core::{Automaton, StateId};

use crate::error::{LocalError, Result};
use crate::profile::{consistent, EnableDisableProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlCongruence {
    pub cells: Vec<Vec<StateId>>,
    /// Cell id of every state.
    pub index: Vec<usize>,
}

impl ControlCongruence {
    /// Every state in its own cell.
    pub fn identity(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// Partition from arbitrary per-state labels. Cells are numbered by
    /// their smallest member, members are sorted.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index = vec![usize::MAX; labels.len()];
        let mut cells: Vec<Vec<StateId>> = Vec::new();
        for x in 0..labels.len() {
            if index[x] != usize::MAX {
                continue;
            }
            let id = cells.len();
            let cell: Vec<StateId> = (x..labels.len()).filter(|&y| labels[y] == labels[x]).collect();
            for &y in &cell {
                index[y] = id;
            }
            cells.push(cell);
        }
        Self { cells, index }
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }
}

#[derive(Clone)]
struct Cells {
    root: Vec<usize>,
    members: Vec<Vec<StateId>>,
}

impl Cells {
    fn new(start: &ControlCongruence) -> Self {
        let mut members = vec![Vec::new(); start.index.len()];
        let mut root = vec![0; start.index.len()];
        for cell in &start.cells {
            for &x in cell {
                root[x] = cell[0];
                members[cell[0]].push(x);
            }
        }
        Cells { root, members }
    }
}

/// Greedy congruence starting from singletons.
pub fn build_congruence(sup: &Automaton, p: &EnableDisableProfile) -> Result<ControlCongruence> {
    build_congruence_from(sup, p, &ControlCongruence::identity(sup.num_states()))
}

/// Greedy merging starting from a congruence `start` that is already valid
/// for `p`. Pairs are tried in lexicographic order; a merge is kept only if
/// the merges it forces through forward closure keep every cell consistent.
/// Passes repeat until nothing merges.
pub fn build_congruence_from(
    sup: &Automaton,
    p: &EnableDisableProfile,
    start: &ControlCongruence,
) -> Result<ControlCongruence> {
    let n = sup.num_states();
    if p.len() != n {
        return Err(LocalError::SizeMismatch(p.len(), n));
    }
    validate_congruence(sup, p, start)?;
    let mut cells = Cells::new(start);
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in x + 1..n {
                if cells.root[x] == cells.root[y] {
                    continue;
                }
                if let Some(merged) = try_merge(sup, p, &cells, x, y) {
                    cells = merged;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(ControlCongruence::from_labels(&cells.root))
}

fn try_merge(sup: &Automaton, p: &EnableDisableProfile, cells: &Cells, a: StateId, b: StateId) -> Option<Cells> {
    let mut c = cells.clone();
    let mut work = vec![(a, b)];
    while let Some((x, y)) = work.pop() {
        let (rx, ry) = (c.root[x], c.root[y]);
        if rx == ry {
            continue;
        }
        for &u in &c.members[rx] {
            for &v in &c.members[ry] {
                if !consistent(p, u, v) {
                    return None;
                }
            }
        }
        let moved = std::mem::take(&mut c.members[ry]);
        for &v in &moved {
            c.root[v] = rx;
        }
        c.members[rx].extend(moved);
        for e in sup.alphabet().ids() {
            let succ: Vec<StateId> = c.members[rx].iter().filter_map(|&u| sup.next(u, e)).collect();
            work.extend(succ.windows(2).map(|w| (w[0], w[1])));
        }
    }
    Some(c)
}

/// Check partition shape, pairwise consistency inside cells, and forward
/// closure for every (cell, event).
pub fn validate_congruence(sup: &Automaton, p: &EnableDisableProfile, cong: &ControlCongruence) -> Result<()> {
    let n = sup.num_states();
    let bad = |m: String| Err(LocalError::Invalid(m));
    if cong.index.len() != n || p.len() != n {
        return bad(format!("index covers {} states, profile {}, supervisor {n}", cong.index.len(), p.len()));
    }
    let mut seen = vec![false; n];
    for (i, cell) in cong.cells.iter().enumerate() {
        if cell.is_empty() {
            return bad(format!("cell {i} is empty"));
        }
        for &x in cell {
            if x >= n || seen[x] || cong.index[x] != i {
                return bad(format!("state {x} is not in exactly cell {i}"));
            }
            seen[x] = true;
        }
        for (k, &x) in cell.iter().enumerate() {
            for &y in &cell[k + 1..] {
                if !consistent(p, x, y) {
                    return bad(format!("states {x} and {y} in cell {i} are not control consistent"));
                }
            }
        }
        for e in sup.alphabet().ids() {
            let mut targets = cell.iter().filter_map(|&x| sup.next(x, e)).map(|t| cong.index[t]);
            if let Some(first) = targets.next() {
                if targets.any(|j| j != first) {
                    return bad(format!(
                        "cell {i} has `{}`-successors in several cells",
                        sup.alphabet().label(e)
                    ));
                }
            }
        }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return bad(format!("state {x} is in no cell"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Part;
    use omegaloc_core::{Alphabet, Kind};

    // a 3-cycle 0 -> 1 -> 2 -> 0 on one event, plus a controllable `c`
    fn ring(enable: Vec<bool>, disable: Vec<bool>) -> (Automaton, EnableDisableProfile) {
        let al = Alphabet::from_pairs(&[("c", true), ("u", false)]).unwrap();
        let mut a = Automaton::new("S", Kind::Star, al, 3);
        for x in 0..3 {
            a.set(x, 1, (x + 1) % 3);
            if enable[x] {
                a.set(x, 0, x);
            }
        }
        let p = EnableDisableProfile { event: 0, enable, disable, part: Part::None };
        (a, p)
    }

    #[test]
    fn nothing_disabled_merges_everything() {
        let (a, p) = ring(vec![true, false, true], vec![false; 3]);
        let c = build_congruence(&a, &p).unwrap();
        assert_eq!(c.cells, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn non_transitive_consistency_is_honoured() {
        // 0 enabled, 2 disabled, 1 neither: 0~1 and 1~2 but not 0~2
        let al = Alphabet::from_pairs(&[("c", true)]).unwrap();
        let mut a = Automaton::new("S", Kind::Star, al, 3);
        a.set(0, 0, 0);
        let p = EnableDisableProfile {
            event: 0,
            enable: vec![true, false, false],
            disable: vec![false, false, true],
            part: Part::None,
        };
        let c = build_congruence(&a, &p).unwrap();
        assert_ne!(c.index[0], c.index[2]);
        assert_eq!(c.num_cells(), 2);
        validate_congruence(&a, &p, &c).unwrap();
    }

    #[test]
    fn forward_closure_blocks_merges() {
        // merging anything on the ring forces merging all of it, and 0/2 clash
        let (a, p) = ring(vec![true, false, false], vec![false, false, true]);
        let c = build_congruence(&a, &p).unwrap();
        assert_eq!(c, ControlCongruence::identity(3));
    }

    #[test]
    fn validation_reports_problems() {
        let (a, p) = ring(vec![true, false, false], vec![false, false, true]);
        let split = ControlCongruence::from_labels(&[0, 0, 1]);
        assert!(validate_congruence(&a, &p, &split).is_err());
        let clash = ControlCongruence::from_labels(&[0, 0, 0]);
        assert!(validate_congruence(&a, &p, &clash).is_err());
        validate_congruence(&a, &p, &ControlCongruence::identity(3)).unwrap();
    }
}
