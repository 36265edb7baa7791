//! Small graph helpers shared by the automata algorithms: strongly connected
//! components, reachability and shortest paths over an implicit successor
//! relation on `0..n`.

use std::collections::VecDeque;

/// Tarjan's algorithm (iterative). Only vertices with `allowed[v]` take part;
/// edges into disallowed vertices are ignored.
pub fn sccs<F>(n: usize, allowed: &[bool], succ: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> Vec<usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if !allowed[root] || index[root] != UNSEEN {
            continue;
        }
        // frame: (vertex, successor list, next position)
        let mut frames: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, succ(root), 0));
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if !allowed[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    let ws = succ(w);
                    frames.push((w, ws, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// A component is nontrivial if it carries a cycle.
pub fn is_nontrivial<F>(comp: &[usize], succ: F) -> bool
where
    F: Fn(usize) -> Vec<usize>,
{
    comp.len() > 1 || succ(comp[0]).contains(&comp[0])
}

/// Vertices (among `allowed`) that can reach some vertex in `target`.
pub fn backward_reach<F>(n: usize, allowed: &[bool], target: &[bool], succ: F) -> Vec<bool>
where
    F: Fn(usize) -> Vec<usize>,
{
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if allowed[v] {
            for w in succ(v) {
                if allowed[w] {
                    preds[w].push(v);
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if allowed[v] && target[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &v in &preds[w] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Vertices reachable from `start` (inclusive) through `allowed` vertices.
pub fn forward_reach<F>(n: usize, allowed: &[bool], start: usize, succ: F) -> Vec<bool>
where
    F: Fn(usize) -> Vec<usize>,
{
    let mut seen = vec![false; n];
    if !allowed[start] {
        return seen;
    }
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in succ(v) {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Shortest labelled path from `from` to any vertex satisfying `goal`, moving
/// only through `allowed` vertices. Edges are `(label, target)` pairs.
/// Returns the labels and the reached vertex. A zero-length path is returned
/// when `from` itself satisfies the goal and `nonempty` is false.
pub fn shortest_path<F, G>(
    n: usize,
    allowed: &[bool],
    from: usize,
    goal: G,
    nonempty: bool,
    edges: F,
) -> Option<(Vec<usize>, usize)>
where
    F: Fn(usize) -> Vec<(usize, usize)>,
    G: Fn(usize) -> bool,
{
    if !nonempty && goal(from) {
        return Some((Vec::new(), from));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    // seed with the first step so that `from` may be revisited as a goal
    for (label, w) in edges(from) {
        if allowed[w] && !seen[w] {
            seen[w] = true;
            parent[w] = Some((from, label));
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        if goal(v) {
            let mut labels = Vec::new();
            let mut cur = v;
            loop {
                let (p, l) = parent[cur].expect("parent");
                labels.push(l);
                // every vertex whose parent is `from` was seeded by the first step
                if p == from {
                    break;
                }
                cur = p;
            }
            labels.reverse();
            return Some((labels, v));
        }
        for (label, w) in edges(v) {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, label));
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g<'a>(adj: &'a [&'a [usize]]) -> impl Fn(usize) -> Vec<usize> + 'a {
        move |v| adj[v].to_vec()
    }

    #[test]
    fn scc_basic() {
        let adj: &[&[usize]] = &[&[1], &[2], &[0, 3], &[3], &[]];
        let mut comps = sccs(5, &[true; 5], g(adj));
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert!(is_nontrivial(&[3], g(adj)));
        assert!(!is_nontrivial(&[4], g(adj)));
    }

    #[test]
    fn scc_respects_allowed() {
        let adj: &[&[usize]] = &[&[1], &[0]];
        let comps = sccs(2, &[true, false], g(adj));
        assert_eq!(comps, vec![vec![0]]);
        assert!(!is_nontrivial(&[0], |v| g(adj)(v).into_iter().filter(|&w| w != 1).collect()));
    }

    #[test]
    fn reachability() {
        let adj: &[&[usize]] = &[&[1], &[2], &[], &[0]];
        let back = backward_reach(4, &[true; 4], &[false, false, true, false], g(adj));
        assert_eq!(back, vec![true, true, true, true]);
        let fwd = forward_reach(4, &[true; 4], 1, g(adj));
        assert_eq!(fwd, vec![false, true, true, false]);
    }

    #[test]
    fn shortest_cycle_back_to_start() {
        let edges = |v: usize| -> Vec<(usize, usize)> {
            match v {
                0 => vec![(10, 1)],
                1 => vec![(11, 2), (12, 0)],
                _ => vec![(13, 0)],
            }
        };
        let (labels, end) = shortest_path(3, &[true; 3], 0, |v| v == 0, true, edges).unwrap();
        assert_eq!(end, 0);
        assert_eq!(labels, vec![10, 12]);
        let (labels, _) = shortest_path(3, &[true; 3], 0, |v| v == 0, false, edges).unwrap();
        assert!(labels.is_empty());
    }
}
