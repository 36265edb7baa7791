//! Liveness supervisor synthesis on top of a controlled plant G^{f*}.
//!
//! Pipeline: [`build_rabin_buchi`] → [`controllability_subset`] →
//! [`restrict_sup`] → [`inf_closure`] → [`existence_check`] →
//! [`assemble_fomega`].

use std::collections::{BTreeMap, BTreeSet};

use omegaloc_core::graph;
use omegaloc_core::lang::{clo_automaton, live_states, omega_contained, pre_automaton, Acceptance};
use omegaloc_core::ops::{buchi_intersection, explore, meet, totalize};
use omegaloc_core::{Automaton, EventId, Kind, LassoWord, RabinPair, StateId, StateSet};

use crate::error::{Result, SynthError};

fn single_pair(a: &Automaton) -> Result<RabinPair> {
    match a.kind {
        Kind::RabinBuchi => match a.rabin.as_slice() {
            [p] => Ok(p.clone()),
            ps => Err(SynthError::MultiPair(a.name.clone(), ps.len())),
        },
        // a Büchi condition B is the Rabin pair (B, all)
        Kind::Buchi => Ok(RabinPair {
            r: a.buchi.clone(),
            i: a.all_states(),
        }),
        Kind::Star => Err(SynthError::WrongKind(a.name.clone(), "buchi or rabin-buchi")),
    }
}

/// The product 𝒜 of the controlled plant with the legal specification.
///
/// * *-layer: L(plant) ∩ pre(E_l) (the legal automaton is first cut down to
///   its live states);
/// * Büchi layer: S(plant) ∩ clo(E_l), the plant's Büchi states lifted;
/// * Rabin layer: S(plant) ∩ E_l. A two-phase counter waits for the legal
///   R set, then for the plant's Büchi set; R' holds the phase-0 states
///   whose legal component is in R, I' lifts the legal I.
pub fn build_rabin_buchi(plant: &Automaton, legal: &Automaton) -> Result<Automaton> {
    if plant.kind == Kind::Star {
        return Err(SynthError::WrongKind(plant.name.clone(), "buchi"));
    }
    let pair = single_pair(legal)?;
    plant
        .alphabet()
        .require_same(legal.alphabet(), "plant and legal spec must share one alphabet")?;
    let live = live_states(legal, &Acceptance::Rabin(pair.clone()));
    let mut cut = legal.with_kind(Kind::Star);
    for (s, e, t) in legal.transitions() {
        if !live[s] || !live[t] {
            cut.remove(s, e);
        }
    }
    let name = "A";
    let (Some(x0), Some(m0)) = (plant.initial(), legal.initial().filter(|&m| live[m])) else {
        let mut e = Automaton::empty(name, Kind::RabinBuchi, plant.alphabet().clone());
        e.rabin = vec![RabinPair::default()];
        return Ok(e);
    };
    let (mut a, keys) = explore(name, Kind::RabinBuchi, plant.alphabet(), (x0, m0, 0u8), |&(x, m, c), e| {
        let x2 = plant.next(x, e)?;
        let m2 = cut.next(m, e)?;
        let c2 = match c {
            0 => u8::from(pair.r.contains(&m)),
            _ => u8::from(!plant.buchi.contains(&x)),
        };
        Some((x2, m2, c2))
    });
    let pick = |f: &dyn Fn(&(StateId, StateId, u8)) -> bool| -> StateSet {
        keys.iter().enumerate().filter(|(_, k)| f(k)).map(|(i, _)| i).collect()
    };
    a.buchi = pick(&|&(x, _, _)| plant.buchi.contains(&x));
    a.rabin = vec![RabinPair {
        r: pick(&|&(_, m, c)| c == 0 && pair.r.contains(&m)),
        i: pick(&|&(_, m, _)| pair.i.contains(&m)),
    }];
    Ok(a)
}

/// C^𝒜 and a winning control pattern φ^𝒜 on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControllabilityResult {
    pub subset: StateSet,
    pub phi: BTreeMap<StateId, BTreeSet<EventId>>,
}

impl ControllabilityResult {
    /// States where φ^𝒜 disables some defined event, with the dropped events.
    pub fn drops(&self, a: &Automaton) -> BTreeMap<StateId, BTreeSet<EventId>> {
        self.phi
            .iter()
            .filter_map(|(&q, p)| {
                let d: BTreeSet<EventId> = a.enabled(q).filter(|e| !p.contains(e)).collect();
                (!d.is_empty()).then_some((q, d))
            })
            .collect()
    }
}

type Set = Vec<bool>;

fn or(a: &Set, b: &Set) -> Set {
    a.iter().zip(b).map(|(x, y)| *x || *y).collect()
}

fn and_not(a: &Set, b: &Set) -> Set {
    a.iter().zip(b).map(|(x, y)| *x && !*y).collect()
}

fn any(a: &Set) -> bool {
    a.iter().any(|&x| x)
}

/// Control-pattern game on one automaton with Büchi set B (liveness
/// assumption) and a Rabin pair (R, I) (objective). A state wins if some
/// memoryless pattern keeps every run from it live (it reaches a B-cycle),
/// and makes every B-visiting cycle stay inside I and meet R.
struct Game<'a> {
    a: &'a Automaton,
    n: usize,
    dom: Set,
    b: Set,
    r: Set,
    i: Set,
}

enum Layer {
    Rabin,
    Progress,
    Stay,
}

impl Game<'_> {
    /// The events at `q` leading into `x`, if every defined uncontrollable
    /// event does and at least one event does.
    fn into(&self, q: StateId, x: &Set) -> Option<Vec<EventId>> {
        if !self.dom[q] {
            return None;
        }
        let mut p = Vec::new();
        for e in self.a.enabled(q) {
            let t = self.a.next(q, e).unwrap();
            if x[t] {
                p.push(e);
            } else if !self.a.alphabet().is_controllable(e) {
                return None;
            }
        }
        (!p.is_empty()).then_some(p)
    }

    fn cpre(&self, x: &Set) -> Set {
        (0..self.n).map(|q| self.into(q, x).is_some()).collect()
    }

    /// T plus the largest set of non-B states satisfying `pred` that can be
    /// held outside B while keeping a cooperative path to T.
    fn stay(&self, t: &Set, pred: impl Fn(StateId) -> bool) -> Set {
        let mut x = self.dom.clone();
        loop {
            let cp = self.cpre(&or(&x, t));
            let cand: Set = (0..self.n).map(|q| cp[q] && pred(q) && !self.b[q] && !t[q]).collect();
            let ct = or(&cand, t);
            let mut reach = t.clone();
            let mut changed = true;
            while changed {
                changed = false;
                for q in 0..self.n {
                    if cand[q] && !reach[q] {
                        let hit = self
                            .into(q, &ct)
                            .is_some_and(|p| p.iter().any(|&e| reach[self.a.next(q, e).unwrap()]));
                        if hit {
                            reach[q] = true;
                            changed = true;
                        }
                    }
                }
            }
            let next: Set = (0..self.n).map(|q| cand[q] && reach[q]).collect();
            if next == x {
                return or(t, &x);
            }
            x = next;
        }
    }

    fn levels_for(&self, base_set: &Set, z: &Set) -> Vec<(Set, Set, Layer)> {
        let mut u = base_set.clone();
        let mut levs = Vec::new();
        let cz = self.cpre(z);
        let base: Set = (0..self.n).map(|q| cz[q] && self.i[q] && self.r[q] && !u[q]).collect();
        if any(&base) {
            let next = or(&u, &base);
            levs.push((u, base, Layer::Rabin));
            u = next;
        }
        loop {
            let cu = self.cpre(&u);
            let new: Set = (0..self.n).map(|q| cu[q] && self.i[q] && !u[q]).collect();
            if any(&new) {
                let next = or(&u, &new);
                levs.push((u, new, Layer::Progress));
                u = next;
                continue;
            }
            let x = self.stay(&u, |q| self.i[q]);
            let new = and_not(&x, &u);
            if !any(&new) {
                return levs;
            }
            let next = or(&u, &new);
            levs.push((u, new, Layer::Stay));
            u = next;
        }
    }

    fn layer_patterns(&self, z: &Set, levs: &[(Set, Set, Layer)]) -> BTreeMap<StateId, Vec<EventId>> {
        let mut p = BTreeMap::new();
        for (prev, new, kind) in levs {
            let both = or(prev, new);
            for q in (0..self.n).filter(|&q| new[q]) {
                let pat = match kind {
                    Layer::Rabin => self.into(q, z),
                    _ if self.b[q] => self.into(q, prev),
                    _ => self.into(q, &both),
                };
                p.insert(q, pat.unwrap_or_default());
            }
        }
        p
    }

    /// States in `s` that reach a B-carrying cycle or `target` under `pat`.
    fn reach_live(&self, s: &Set, target: &Set, pat: &dyn Fn(StateId) -> Vec<EventId>) -> Set {
        let succ = |q: StateId| -> Vec<StateId> {
            pat(q).iter().map(|&e| self.a.next(q, e).unwrap()).collect()
        };
        let inner = |q: StateId| -> Vec<StateId> { succ(q).into_iter().filter(|&t| s[t]).collect() };
        let mut good = target.clone();
        for comp in graph::sccs(self.n, s, &succ) {
            if graph::is_nontrivial(&comp, inner) && comp.iter().any(|&q| self.b[q]) {
                for &q in &comp {
                    good[q] = true;
                }
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..self.n {
                if s[q] && !good[q] && succ(q).iter().any(|&t| good[t]) {
                    good[q] = true;
                    changed = true;
                }
            }
        }
        good
    }

    fn solve(&self) -> (Set, Vec<Option<Vec<EventId>>>) {
        let n = self.n;
        let mut w = vec![false; n];
        let mut phi: Vec<Option<Vec<EventId>>> = vec![None; n];
        loop {
            // controller attractor of the current winning set
            let mut att = w.clone();
            loop {
                let new = and_not(&self.cpre(&att), &att);
                if !any(&new) {
                    break;
                }
                let both = or(&att, &new);
                for q in (0..n).filter(|&q| new[q]) {
                    phi[q] = if self.b[q] { self.into(q, &att) } else { self.into(q, &both) };
                }
                att = both;
            }
            let x1 = self.stay(&att, |_| true);

            // Rabin core, shrunk until every member stays live under its pattern
            let mut z = self.dom.clone();
            let mut levs;
            loop {
                levs = self.levels_for(&att, &z);
                let pz = self.layer_patterns(&z, &levs);
                let s: Set = (0..n).map(|q| pz.contains_key(&q)).collect();
                let good = self.reach_live(&s, &att, &|q| pz.get(&q).cloned().unwrap_or_default());
                let next: Set = (0..n).map(|q| att[q] || (s[q] && good[q])).collect();
                if next == z {
                    break;
                }
                z = next;
            }
            for (q, p) in self.layer_patterns(&z, &levs) {
                phi[q] = Some(p);
            }
            let all = or(&or(&x1, &att), &z);
            for q in 0..n {
                if x1[q] && !att[q] && !z[q] {
                    phi[q] = self.into(q, &all);
                }
            }
            if all == w {
                return (w, phi);
            }
            w = all;
        }
    }
}

/// Largest set of states from which a supervisor (choosing, at every step, a
/// control pattern containing every defined uncontrollable event) keeps the
/// run nonblocking and Rabin-accepting whenever it is Büchi-accepting.
///
/// Single-pair only. The game is solved on a shrinking domain until every
/// winning state reaches a Büchi cycle under the recorded patterns.
pub fn controllability_subset(a: &Automaton) -> Result<ControllabilityResult> {
    controllability_subset_excluding(a, &StateSet::new())
}

/// 𝒜-states at which the plant can fire an uncontrollable event that 𝒜 does
/// not have, because the legal specification forbids it. No supervisor can
/// prevent leaving pre(E_l) there.
pub fn uncontrollable_exits(a: &Automaton, plant: &Automaton) -> Result<StateSet> {
    let (_, pairs) = meet(a, &plant.with_kind(Kind::Star))?;
    let al = plant.alphabet();
    Ok(pairs
        .iter()
        .filter(|&&(q, x)| al.uncontrollable().any(|u| plant.next(x, u).is_some() && a.next(q, u).is_none()))
        .map(|&(q, _)| q)
        .collect())
}

/// As [`controllability_subset`], with the states in `blocked` losing from
/// the start (typically [`uncontrollable_exits`]).
pub fn controllability_subset_excluding(a: &Automaton, blocked: &StateSet) -> Result<ControllabilityResult> {
    let pair = match a.rabin.as_slice() {
        [p] if a.kind == Kind::RabinBuchi => p.clone(),
        ps if a.kind == Kind::RabinBuchi => return Err(SynthError::MultiPair(a.name.clone(), ps.len())),
        _ => return Err(SynthError::WrongKind(a.name.clone(), "rabin-buchi")),
    };
    let n = a.num_states();
    let mask = |s: &StateSet| -> Set { (0..n).map(|q| s.contains(&q)).collect() };
    let mut game = Game {
        a,
        n,
        dom: (0..n).map(|q| !blocked.contains(&q)).collect(),
        b: mask(&a.buchi),
        r: mask(&pair.r),
        i: mask(&pair.i),
    };
    loop {
        let (w, phi) = game.solve();
        let keep = game.reach_live(&w, &vec![false; n], &|q| phi[q].clone().unwrap_or_default());
        let keep: Set = (0..n).map(|q| w[q] && keep[q]).collect();
        if keep == game.dom {
            let subset: StateSet = (0..n).filter(|&q| w[q]).collect();
            let phi = subset
                .iter()
                .map(|&q| (q, phi[q].clone().unwrap_or_default().into_iter().collect()))
                .collect();
            log::debug!("controllability subset: {} of {} states", subset.len(), n);
            return Ok(ControllabilityResult { subset, phi });
        }
        game.dom = keep;
    }
}

/// 𝒜_sup on the same state space as 𝒜: states outside C^𝒜 lose all their
/// transitions (in and out) and leave every acceptance set, so the *-layer
/// becomes pre(sup C^ω) and the Rabin layer sup C^ω. State ids, and hence
/// the keys of φ^𝒜, stay valid. Empty if the initial state is not in C^𝒜.
pub fn restrict_sup(a: &Automaton, c: &ControllabilityResult) -> Automaton {
    let keep = |q: &StateId| c.subset.contains(q);
    if !a.initial().is_some_and(|q0| keep(&q0)) {
        let mut e = Automaton::empty("A_sup", a.kind, a.alphabet().clone());
        e.rabin = vec![RabinPair::default(); a.rabin.len()];
        return e;
    }
    let mut s = a.clone();
    for (p, e, t) in a.transitions() {
        if !keep(&p) || !keep(&t) {
            s.remove(p, e);
        }
    }
    s.buchi.retain(keep);
    for p in &mut s.rabin {
        p.r.retain(keep);
        p.i.retain(keep);
    }
    s.name = "A_sup".into();
    s
}

/// clo(A) ∩ S(plant) for a Büchi automaton A over the plant alphabet.
pub fn inf_closure(minimal: &Automaton, plant: &Automaton) -> Result<Automaton> {
    let clo = clo_automaton(minimal, &Acceptance::buchi_of(minimal));
    let mut out = buchi_intersection(&clo, plant)?;
    out.name = "infF(A)".into();
    Ok(out)
}

/// Evidence that inf F^ω(A) ⊆ sup C^ω(E_l) was checked. Only
/// [`existence_check`] creates one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceProof {
    _checked: (),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Existence {
    Holds(ExistenceProof),
    /// A lasso of inf F^ω(A) outside sup C^ω(E_l).
    Fails(LassoWord),
}

pub fn existence_check(inf_a: &Automaton, sup_e: &Automaton) -> Result<Existence> {
    let pair = single_pair(sup_e)?;
    let w = omega_contained(inf_a, &Acceptance::buchi_of(inf_a), sup_e, &Acceptance::Rabin(pair))?;
    Ok(match w {
        None => Existence::Holds(ExistenceProof { _checked: () }),
        Some(w) => Existence::Fails(w),
    })
}

/// SUP^ω with its state map ψ over (𝒜_sup state, tracker state).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSupervisor {
    pub automaton: Automaton,
    pub buchi_lift: StateSet,
    /// For every SUP^ω state: the 𝒜_sup state and the tracker state.
    pub keys: Vec<(StateId, StateId)>,
    /// ψ, indexed like `keys`.
    pub psi: Vec<BTreeSet<EventId>>,
    /// Total *-automaton tracking pre(A); `sink` is entered on leaving it.
    pub tracker: Automaton,
    pub sink: Option<StateId>,
}

impl OmegaSupervisor {
    /// The SUP^ω state is reached only by strings in pre(A).
    pub fn in_pre_a(&self, x: StateId) -> bool {
        Some(self.keys[x].1) != self.sink
    }

    pub fn with_acceptance(&self) -> Automaton {
        let mut a = self.automaton.with_kind(Kind::Buchi);
        a.buchi = self.buchi_lift.clone();
        a
    }
}

/// A total *-automaton for pre(A) and its sink, entered exactly when a
/// string leaves pre(A).
pub fn pre_a_tracker(minimal: &Automaton) -> (Automaton, Option<StateId>) {
    let t = totalize(&pre_automaton(minimal, &Acceptance::buchi_of(minimal)));
    (t.automaton, t.sink)
}

/// Build SUP^ω. Along pre(A) every event defined in 𝒜_sup stays enabled;
/// once the tracker has left pre(A), φ^𝒜 decides.
pub fn assemble_fomega(
    asup: &Automaton,
    c: &ControllabilityResult,
    minimal: &Automaton,
    _proof: &ExistenceProof,
) -> Result<OmegaSupervisor> {
    asup.alphabet()
        .require_same(minimal.alphabet(), "minimal spec must use the plant alphabet")?;
    let (tracker, sink) = pre_a_tracker(minimal);
    let live = live_states(asup, &Acceptance::Rabin(single_pair(asup)?));
    if let Some(q0) = asup.initial() {
        let reach = graph::forward_reach(asup.num_states(), &vec![true; asup.num_states()], q0, |q| {
            asup.successors(q).collect()
        });
        if asup.states().any(|q| reach[q] && !live[q]) {
            log::warn!("A_sup has reachable states outside pre(sup C^omega)");
        }
    }

    let empty = BTreeSet::new();
    let psi_of = |q: StateId, z: StateId| -> BTreeSet<EventId> {
        if Some(z) == sink {
            c.phi.get(&q).unwrap_or(&empty).clone()
        } else {
            asup.enabled(q).collect()
        }
    };
    let (Some(q0), Some(z0)) = (asup.initial(), tracker.initial()) else {
        return Ok(OmegaSupervisor {
            automaton: Automaton::empty("SUP^w", Kind::Star, asup.alphabet().clone()),
            buchi_lift: StateSet::new(),
            keys: Vec::new(),
            psi: Vec::new(),
            tracker,
            sink,
        });
    };
    let (mut automaton, keys) = explore("SUP^w", Kind::Star, asup.alphabet(), (q0, z0), |&(q, z), e| {
        if !psi_of(q, z).contains(&e) {
            return None;
        }
        Some((asup.next(q, e)?, tracker.next(z, e)?))
    });
    automaton.name = "SUP^w".into();
    let psi = keys.iter().map(|&(q, z)| psi_of(q, z)).collect();
    let buchi_lift = keys
        .iter()
        .enumerate()
        .filter(|(_, (q, _))| asup.buchi.contains(q))
        .map(|(i, _)| i)
        .collect();
    Ok(OmegaSupervisor {
        automaton,
        buchi_lift,
        keys,
        psi,
        tracker,
        sink,
    })
}
