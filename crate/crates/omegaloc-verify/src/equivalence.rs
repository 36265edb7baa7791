//! Equivalence checks: the plant under all local controllers behaves
//! like the plant under the monolithic supervisors.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use omegaloc_core::lang::star_equal;
use omegaloc_core::ops::{meet, sync_product};
use omegaloc_core::random::{random_lasso, walk_lasso};
use omegaloc_core::{run_lasso, Alphabet, Automaton, EventId, Kind, LassoWord, StateId};
use omegaloc_local::{check_controller_property, ControllerKind, LocalController, Scope};

use crate::error::Result;

/// Longest cycle of a sampled lasso.
const MAX_CYCLE: usize = 12;

/// A disagreement that can be replayed with `run_star` / `run_lasso`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Word(Vec<EventId>),
    Lasso(LassoWord),
}

impl Witness {
    pub fn display(&self, al: &Alphabet) -> String {
        match self {
            Witness::Word(w) => al.labels(w).join(" "),
            Witness::Lasso(w) => w.display(al).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub finite_ok: bool,
    pub infinite_ok: bool,
    /// Human-readable form of `witness`.
    pub counterexample: Option<String>,
    #[serde(skip)]
    pub witness: Option<Witness>,
    pub checked_lassos: usize,
    pub seed: u64,
    pub sub_results: BTreeMap<String, bool>,
}

impl EquivalenceReport {
    fn fail(&mut self, w: Witness, al: &Alphabet) {
        if self.witness.is_none() {
            self.counterexample = Some(w.display(al));
            self.witness = Some(w);
        }
    }
}

fn split(controllers: &[LocalController]) -> (Vec<&Automaton>, Vec<&Automaton>) {
    let pick = |k| {
        controllers
            .iter()
            .filter(|c| c.kind == k)
            .map(|c| &c.automaton)
            .collect()
    };
    (pick(ControllerKind::Safety), pick(ControllerKind::Liveness))
}

fn product(base: &Automaton, ops: &[&Automaton]) -> Result<Automaton> {
    let star = base.with_kind(Kind::Star);
    let mut all = vec![&star];
    all.extend_from_slice(ops);
    Ok(sync_product(&all, base.alphabet())?)
}

/// Exact comparison of finite behaviours:
///
/// * `safety`:   L(G) ∩ ⋂ L(LOC*_α) = L(SUP*)
/// * `liveness`: L(SUP*) ∩ ⋂ L(LOC^ω_{α,n}) = L(SUP^ω)
/// * `combined`: L(G) ∩ every controller = L(SUP^ω)
///
/// `finite_ok` requires all three; the first failing one supplies the
/// counterexample, a shortest string in the symmetric difference.
pub fn check_finite_equivalence(
    plant: &Automaton,
    sup_star: &Automaton,
    sup_omega: &Automaton,
    controllers: &[LocalController],
) -> Result<EquivalenceReport> {
    let al = plant.alphabet();
    let (safety, liveness) = split(controllers);
    let all: Vec<&Automaton> = controllers.iter().map(|c| &c.automaton).collect();
    let mut report = EquivalenceReport {
        finite_ok: true,
        infinite_ok: false,
        counterexample: None,
        witness: None,
        checked_lassos: 0,
        seed: 0,
        sub_results: BTreeMap::new(),
    };
    let checks = [
        ("combined", product(plant, &all)?, sup_omega),
        ("safety", product(plant, &safety)?, sup_star),
        ("liveness", product(sup_star, &liveness)?, sup_omega),
    ];
    for (name, lhs, rhs) in &checks {
        let diff = star_equal(lhs, rhs)?;
        report.sub_results.insert(format!("finite_{name}"), diff.is_none());
        if let Some(w) = diff {
            report.finite_ok = false;
            report.fail(Witness::Word(w), al);
        }
    }
    Ok(report)
}

/// Fold of pairwise meets: an automaton for ⋂ L(ops), built independently
/// of the synchronous product.
fn fold_meet(base: &Automaton, ops: &[&Automaton]) -> Result<Automaton> {
    let mut acc = base.with_kind(Kind::Star);
    for op in ops {
        acc = meet(&acc, op)?.0;
    }
    Ok(acc)
}

/// Infinite behaviours, in two tiers.
///
/// Tier 1 re-checks the premise that the controlled *-behaviour is the
/// intersection of the operands' languages (synchronous product against a
/// fold of pairwise meets); with the finite equalities of `finite`, lim of
/// both sides agree and so do their intersections with S(G).
///
/// Tier 2 samples `lassos` ultimately periodic words (cycles of at most 12
/// events; walks on SUP^ω, on the plant, and uniform words) and compares
/// S(G) ∩ ⋂ lim L(LOC) with S(G) ∩ lim L(SUP^ω) on each, and likewise
/// for the safety and liveness factors.
pub fn check_infinite_equivalence(
    plant: &Automaton,
    sup_star: &Automaton,
    sup_omega: &Automaton,
    controllers: &[LocalController],
    finite: &EquivalenceReport,
    lassos: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    let al = plant.alphabet();
    let (safety, liveness) = split(controllers);
    let all: Vec<&Automaton> = controllers.iter().map(|c| &c.automaton).collect();
    let mut report = finite.clone();
    report.seed = seed;

    let mut tier1 = finite.finite_ok;
    for (name, base, ops) in [("combined", plant, &all), ("safety", plant, &safety), ("liveness", sup_star, &liveness)] {
        let diff = star_equal(&product(base, ops)?, &fold_meet(base, ops)?)?;
        report.sub_results.insert(format!("limit_premise_{name}"), diff.is_none());
        if let Some(w) = diff {
            tier1 = false;
            report.fail(Witness::Word(w), al);
        }
    }
    report.sub_results.insert("tier1".into(), tier1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tier2 = true;
    let limit = |a: &Automaton, w: &LassoWord| run_lasso(a, w).in_limit();
    let limit_all = |ops: &[&Automaton], w: &LassoWord| ops.iter().all(|a| limit(a, w));
    for i in 0..lassos {
        let w = sample(&mut rng, i, sup_omega, plant);
        let fair = run_lasso(plant, &w).buchi(&plant.buchi);
        let checks = [
            (fair && limit_all(&all, &w)) == (fair && limit(sup_omega, &w)),
            (fair && limit_all(&safety, &w)) == (fair && limit(sup_star, &w)),
            (fair && limit(sup_star, &w) && limit_all(&liveness, &w)) == (fair && limit(sup_omega, &w)),
        ];
        if checks.iter().any(|ok| !ok) {
            log::error!("sampled lasso disagrees: {}", w.display(al));
            tier2 = false;
            report.fail(Witness::Lasso(w), al);
        }
        report.checked_lassos += 1;
    }
    report.sub_results.insert("tier2".into(), tier2);
    report.infinite_ok = tier1 && tier2;
    Ok(report)
}

fn sample(rng: &mut ChaCha8Rng, i: usize, sup: &Automaton, plant: &Automaton) -> LassoWord {
    let source = match i % 3 {
        0 => Some(sup),
        1 => Some(plant),
        _ => None,
    };
    if let Some(a) = source {
        for _ in 0..8 {
            let min = rng.gen_range(1..=8);
            if let Some(w) = walk_lasso(rng, a, min) {
                if w.cycle.len() <= MAX_CYCLE {
                    return w;
                }
            }
        }
    }
    random_lasso(rng, plant.alphabet(), 6, MAX_CYCLE)
}

/// The exact controller property of every controller against its parent:
/// safety controllers against SUP* over the plant, liveness controllers
/// against SUP^ω over G^{f*} within their part. Returns the stems of the
/// failing controllers with the violating string.
pub fn check_controller_properties(
    plant: &Automaton,
    sup_star: &Automaton,
    controlled: &Automaton,
    sup_omega: &Automaton,
    tracker: &Automaton,
    sink: Option<StateId>,
    controllers: &[LocalController],
) -> Result<Vec<(String, Vec<EventId>)>> {
    let mut bad = Vec::new();
    for l in controllers {
        let w = match l.kind {
            ControllerKind::Safety => check_controller_property(l, plant, sup_star, None)?,
            ControllerKind::Liveness => {
                let scope = Scope { tracker, sink, part: l.part };
                check_controller_property(l, controlled, sup_omega, Some(&scope))?
            }
        };
        if let Some(w) = w {
            bad.push((l.file_stem(), w));
        }
    }
    Ok(bad)
}
