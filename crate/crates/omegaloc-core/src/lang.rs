//! Language-level queries: live states, pre/closure automata, containment
//! and equality of *-languages and ω-languages with counterexamples.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::EventId;
use crate::automaton::{Automaton, Kind, RabinPair, StateId, StateSet};
use crate::error::Result;
use crate::graph;
use crate::lasso::{run_lasso, LassoRun, LassoWord};
use crate::ops::{explore, restrict, totalize};

/// An ω-acceptance condition over the states of one automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// Every infinite run is accepted: the ω-language is lim of the *-language.
    Limit,
    Buchi(StateSet),
    Rabin(RabinPair),
}

impl Acceptance {
    /// The Büchi layer of a Büchi or Rabin-Büchi automaton, `Limit` for a
    /// *-automaton.
    pub fn buchi_of(a: &Automaton) -> Acceptance {
        match a.kind {
            Kind::Star => Acceptance::Limit,
            _ => Acceptance::Buchi(a.buchi.clone()),
        }
    }

    /// The single Rabin pair of `a`. Panics if `a` does not carry exactly one.
    pub fn rabin_of(a: &Automaton) -> Acceptance {
        Acceptance::Rabin(a.single_pair().expect("exactly one Rabin pair").clone())
    }

    pub fn accepts(&self, run: &LassoRun) -> bool {
        match self {
            Acceptance::Limit => run.in_limit(),
            Acceptance::Buchi(b) => run.buchi(b),
            Acceptance::Rabin(p) => run.rabin(p),
        }
    }
}

fn succ_of(a: &Automaton) -> impl Fn(usize) -> Vec<usize> + '_ {
    move |q| a.successors(q).collect()
}

/// States from which some infinite run satisfies `acc`.
pub fn live_states(a: &Automaton, acc: &Acceptance) -> Vec<bool> {
    let n = a.num_states();
    let allowed: Vec<bool> = match acc {
        Acceptance::Rabin(p) => (0..n).map(|q| p.i.contains(&q)).collect(),
        _ => vec![true; n],
    };
    let succ = succ_of(a);
    let mut target = vec![false; n];
    for comp in graph::sccs(n, &allowed, &succ) {
        let inner = |q: usize| -> Vec<usize> { succ(q).into_iter().filter(|&t| allowed[t]).collect() };
        if !graph::is_nontrivial(&comp, inner) {
            continue;
        }
        let good = match acc {
            Acceptance::Limit => true,
            Acceptance::Buchi(b) => comp.iter().any(|q| b.contains(q)),
            Acceptance::Rabin(p) => comp.iter().any(|q| p.r.contains(q)),
        };
        if good {
            for &q in &comp {
                target[q] = true;
            }
        }
    }
    graph::backward_reach(n, &vec![true; n], &target, succ)
}

/// *-automaton for pre(L_ω): the prefixes of accepted ω-words.
pub fn pre_automaton(a: &Automaton, acc: &Acceptance) -> Automaton {
    let live = live_states(a, acc);
    let mut p = restrict(&a.with_kind(Kind::Star), &live);
    p.name = format!("pre({})", a.name);
    p
}

/// Büchi automaton (all states accepting) for the topological closure
/// lim(pre(L_ω)).
pub fn clo_automaton(a: &Automaton, acc: &Acceptance) -> Automaton {
    let mut c = pre_automaton(a, acc).limit();
    c.name = format!("clo({})", a.name);
    c
}

/// Every reachable state enables at least one event.
pub fn is_deadlock_free(a: &Automaton) -> bool {
    let Some(q0) = a.initial() else {
        return true;
    };
    let reach = graph::forward_reach(a.num_states(), &vec![true; a.num_states()], q0, succ_of(a));
    a.states().all(|q| !reach[q] || a.enabled(q).next().is_some())
}

/// Shortest word in L(a) \ L(b) (*-languages), or `None` if L(a) ⊆ L(b).
pub fn star_contained(a: &Automaton, b: &Automaton) -> Result<Option<Vec<EventId>>> {
    a.alphabet()
        .require_same(b.alphabet(), "containment operands must share one alphabet")?;
    let Some(p0) = a.initial() else {
        return Ok(None);
    };
    let start = (p0, b.initial());
    if start.1.is_none() {
        return Ok(Some(Vec::new()));
    }
    let mut parent: HashMap<(StateId, Option<StateId>), Option<((StateId, Option<StateId>), EventId)>> =
        HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for e in a.alphabet().ids() {
            let Some(p) = a.next(cur.0, e) else { continue };
            let q = cur.1.and_then(|q| b.next(q, e));
            let key = (p, q);
            if parent.contains_key(&key) {
                continue;
            }
            parent.insert(key, Some((cur, e)));
            if q.is_none() {
                let mut word = vec![];
                let mut k = key;
                while let Some(Some((prev, ev))) = parent.get(&k) {
                    word.push(*ev);
                    k = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            queue.push_back(key);
        }
    }
    Ok(None)
}

/// A word in the symmetric difference of the two *-languages, if any.
pub fn star_equal(a: &Automaton, b: &Automaton) -> Result<Option<Vec<EventId>>> {
    if let Some(w) = star_contained(a, b)? {
        return Ok(Some(w));
    }
    star_contained(b, a)
}

/// One way for the right-hand side to reject: the run must stay inside
/// `allowed` and its cycle must hit every set in `must`.
struct Shape {
    allowed: Box<dyn Fn(StateId, StateId) -> bool>,
    must: Vec<Box<dyn Fn(StateId, StateId) -> bool>>,
}

/// An ultimately periodic word accepted by (a, ca) and rejected by (b, cb),
/// or `None` if L_ω(a, ca) ⊆ L_ω(b, cb). Both automata must be deterministic
/// over one alphabet. The witness is greedily shortened.
pub fn omega_contained(
    a: &Automaton,
    ca: &Acceptance,
    b: &Automaton,
    cb: &Acceptance,
) -> Result<Option<LassoWord>> {
    a.alphabet()
        .require_same(b.alphabet(), "containment operands must share one alphabet")?;
    let Some(p0) = a.initial() else {
        return Ok(None);
    };
    let tb = totalize(b);
    let bt = tb.automaton;
    let sink = tb.sink;
    let q0 = bt.initial().expect("totalized automaton has a state");
    let (prod, keys) = explore("diff", Kind::Star, a.alphabet(), (p0, q0), |&(p, q), e| {
        Some((a.next(p, e)?, bt.next(q, e).expect("total")))
    });

    let mut shapes: Vec<Shape> = Vec::new();
    let is_sink = move |q: StateId| Some(q) == sink;
    match cb.clone() {
        Acceptance::Limit => shapes.push(Shape {
            allowed: Box::new(|_, _| true),
            must: vec![Box::new(move |_, q| is_sink(q))],
        }),
        Acceptance::Buchi(set) => shapes.push(Shape {
            allowed: Box::new(move |_, q| !set.contains(&q)),
            must: vec![],
        }),
        Acceptance::Rabin(pair) => {
            let r = pair.r.clone();
            shapes.push(Shape {
                allowed: Box::new(move |_, q| !r.contains(&q)),
                must: vec![],
            });
            let i = pair.i;
            shapes.push(Shape {
                allowed: Box::new(|_, _| true),
                must: vec![Box::new(move |_, q| !i.contains(&q) || is_sink(q))],
            });
        }
    }
    for shape in &mut shapes {
        match ca.clone() {
            Acceptance::Limit => {}
            Acceptance::Buchi(set) => shape.must.push(Box::new(move |p, _| set.contains(&p))),
            Acceptance::Rabin(pair) => {
                let prev = std::mem::replace(&mut shape.allowed, Box::new(|_, _| true));
                let i = pair.i.clone();
                shape.allowed = Box::new(move |p, q| prev(p, q) && i.contains(&p));
                let r = pair.r;
                shape.must.push(Box::new(move |p, _| r.contains(&p)));
            }
        }
    }

    for shape in &shapes {
        if let Some(w) = find_lasso(&prod, &keys, shape) {
            let bad = |w: &LassoWord| ca.accepts(&run_lasso(a, w)) && !cb.accepts(&run_lasso(b, w));
            debug_assert!(bad(&w));
            return Ok(Some(shrink(w, bad)));
        }
    }
    Ok(None)
}

/// Both directions of [`omega_contained`].
pub fn omega_equal(
    a: &Automaton,
    ca: &Acceptance,
    b: &Automaton,
    cb: &Acceptance,
) -> Result<Option<LassoWord>> {
    if let Some(w) = omega_contained(a, ca, b, cb)? {
        return Ok(Some(w));
    }
    omega_contained(b, cb, a, ca)
}

fn find_lasso(prod: &Automaton, keys: &[(StateId, StateId)], shape: &Shape) -> Option<LassoWord> {
    let n = prod.num_states();
    let allowed: Vec<bool> = keys.iter().map(|&(p, q)| (shape.allowed)(p, q)).collect();
    let edges = |v: usize| -> Vec<(usize, usize)> { prod.enabled(v).map(|e| (e, prod.next(v, e).unwrap())).collect() };
    let succ = |v: usize| -> Vec<usize> { prod.successors(v).collect() };
    for comp in graph::sccs(n, &allowed, succ) {
        let mut in_comp = vec![false; n];
        for &v in &comp {
            in_comp[v] = true;
        }
        let inner = |v: usize| -> Vec<usize> { succ(v).into_iter().filter(|&t| in_comp[t]).collect() };
        if !graph::is_nontrivial(&comp, inner) {
            continue;
        }
        let mut hits = Vec::new();
        for m in &shape.must {
            match comp.iter().copied().find(|&v| m(keys[v].0, keys[v].1)) {
                Some(v) => hits.push(v),
                None => break,
            }
        }
        if hits.len() < shape.must.len() {
            continue;
        }
        let anchor = hits.first().copied().unwrap_or(comp[0]);
        let (stem, _) = graph::shortest_path(n, &vec![true; n], 0, |v| v == anchor, false, edges)?;
        let mut cycle = Vec::new();
        let mut cur = anchor;
        for &h in hits.iter().skip(1) {
            let (seg, end) = graph::shortest_path(n, &in_comp, cur, |v| v == h, false, edges)?;
            cycle.extend(seg);
            cur = end;
        }
        let (seg, _) = graph::shortest_path(n, &in_comp, cur, |v| v == anchor, cycle.is_empty(), edges)?;
        cycle.extend(seg);
        return Some(LassoWord::new(stem, cycle));
    }
    None
}

/// Drop single letters while the witness keeps its property.
fn shrink(mut w: LassoWord, keep: impl Fn(&LassoWord) -> bool) -> LassoWord {
    loop {
        let mut changed = false;
        for i in 0..w.stem.len() {
            let mut c = w.clone();
            c.stem.remove(i);
            if keep(&c) {
                w = c;
                changed = true;
                break;
            }
        }
        if !changed && w.cycle.len() > 1 {
            for i in 0..w.cycle.len() {
                let mut c = w.clone();
                c.cycle.remove(i);
                if keep(&c) {
                    w = c;
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            return w;
        }
    }
}

/// Membership of a lasso in lim(L(a)).
pub fn in_limit(a: &Automaton, w: &LassoWord) -> bool {
    run_lasso(a, w).in_limit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn al() -> Alphabet {
        Alphabet::from_pairs(&[("a", true), ("b", false)]).unwrap()
    }

    // a-loop at 0, b moves to 1 which loops on b
    fn two_loops(buchi: &[usize]) -> Automaton {
        let mut x = Automaton::new("x", Kind::Buchi, al(), 2);
        x.set(0, 0, 0);
        x.set(0, 1, 1);
        x.set(1, 1, 1);
        x.buchi = buchi.iter().copied().collect();
        x
    }

    #[test]
    fn live_and_pre() {
        let x = two_loops(&[1]);
        assert_eq!(live_states(&x, &Acceptance::buchi_of(&x)), vec![true, true]);
        let mut y = two_loops(&[0]);
        y.remove(1, 1);
        let live = live_states(&y, &Acceptance::buchi_of(&y));
        assert_eq!(live, vec![true, false]);
        let p = pre_automaton(&y, &Acceptance::buchi_of(&y));
        assert_eq!(p.num_states(), 1);
        assert!(is_deadlock_free(&p));
        assert!(!is_deadlock_free(&y));
    }

    #[test]
    fn star_counterexample() {
        let x = two_loops(&[]);
        let mut y = x.clone();
        y.remove(1, 1);
        assert_eq!(star_contained(&y, &x).unwrap(), None);
        assert_eq!(star_contained(&x, &y).unwrap(), Some(vec![1, 1]));
        assert!(star_equal(&x, &x).unwrap().is_none());
    }

    #[test]
    fn omega_counterexample() {
        let inf_a = two_loops(&[0]);
        let inf_b = two_loops(&[1]);
        let w = omega_contained(&inf_a, &Acceptance::buchi_of(&inf_a), &inf_b, &Acceptance::buchi_of(&inf_b))
            .unwrap()
            .unwrap();
        assert_eq!(w, LassoWord::new(vec![], vec![0]));
        let all = inf_a.limit();
        assert!(omega_contained(&inf_a, &Acceptance::buchi_of(&inf_a), &all, &Acceptance::Limit)
            .unwrap()
            .is_none());
        assert!(omega_contained(&all, &Acceptance::Limit, &inf_a, &Acceptance::buchi_of(&inf_a))
            .unwrap()
            .is_some());
    }

    #[test]
    fn rabin_rejection_shapes() {
        let x = two_loops(&[0, 1]);
        // accept: eventually stay in {1}
        let stay1 = Acceptance::Rabin(RabinPair {
            r: [1].into(),
            i: [1].into(),
        });
        let w = omega_contained(&x, &Acceptance::Limit, &x, &stay1).unwrap().unwrap();
        assert_eq!(w, LassoWord::new(vec![], vec![0]));
        assert!(omega_contained(&x, &stay1, &x, &Acceptance::Limit).unwrap().is_none());
    }
}
