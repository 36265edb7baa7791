//! The synthesis and localization stages chained together, and random toy
//! instances of the whole chain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omegaloc_core::lang::{live_states, omega_contained, Acceptance};
use omegaloc_core::ops::restrict;
use omegaloc_core::random::{random_alphabet, random_automaton, random_subset};
use omegaloc_core::{Automaton, Kind, LassoWord, RabinPair, StateSet};
use omegaloc_local::{localize_all, Localization};
use omegaloc_synth::{
    assemble_fomega, build_rabin_buchi, controllability_subset_excluding, controlled_plant, existence_check,
    inf_closure, restrict_sup, sup_con_star, uncontrollable_exits, ControllabilityResult, Existence,
    OmegaSupervisor, SafetySupervisor,
};

use crate::error::{Result, VerifyError};

/// Every intermediate result of one run.
#[derive(Clone, Debug)]
pub struct Artifacts {
    /// G, with the fairness assumptions as its Büchi set.
    pub plant: Automaton,
    pub spec: Automaton,
    pub sup: SafetySupervisor,
    /// G^{f*}.
    pub controlled: Automaton,
    /// 𝒜.
    pub a: Automaton,
    pub exits: StateSet,
    pub c: ControllabilityResult,
    /// 𝒜_sup.
    pub asup: Automaton,
    /// inf F^ω(A).
    pub inf: Automaton,
    pub omega: OmegaSupervisor,
    pub loc: Localization,
}

struct Prepared {
    plant: Automaton,
    spec: Automaton,
    sup: SafetySupervisor,
    controlled: Automaton,
    a: Automaton,
    exits: StateSet,
    c: ControllabilityResult,
    asup: Automaton,
}

fn prepare(plant: Automaton, spec: Automaton, legal: &Automaton) -> Result<Prepared> {
    let sup = sup_con_star(&plant, &spec)?;
    log::info!(
        "SUP*: {} states, {} transitions, |B| = {}",
        sup.automaton.num_states(),
        sup.automaton.num_transitions(),
        sup.buchi_lift.len()
    );
    let controlled = controlled_plant(&sup);
    let a = build_rabin_buchi(&controlled, legal)?;
    let exits = uncontrollable_exits(&a, &controlled)?;
    let c = controllability_subset_excluding(&a, &exits)?;
    log::info!("A: {} states, C^A: {} states", a.num_states(), c.subset.len());
    let asup = restrict_sup(&a, &c);
    Ok(Prepared { plant, spec, sup, controlled, a, exits, c, asup })
}

fn finish(p: Prepared, minimal: &Automaton) -> Result<Artifacts> {
    let inf = inf_closure(minimal, &p.controlled)?;
    let proof = match existence_check(&inf, &p.asup)? {
        Existence::Holds(proof) => proof,
        Existence::Fails(w) => return Err(VerifyError::NoSupervisor(w)),
    };
    let omega = assemble_fomega(&p.asup, &p.c, minimal, &proof)?;
    log::info!(
        "SUP^w: {} states, {} transitions",
        omega.automaton.num_states(),
        omega.automaton.num_transitions()
    );
    let loc = localize_all(
        &p.plant,
        &p.sup.automaton,
        &p.controlled,
        &omega.automaton,
        &omega.tracker,
        omega.sink,
    )?;
    Ok(Artifacts {
        plant: p.plant,
        spec: p.spec,
        sup: p.sup,
        controlled: p.controlled,
        a: p.a,
        exits: p.exits,
        c: p.c,
        asup: p.asup,
        inf,
        omega,
        loc,
    })
}

/// SUP* → G^{f*} → 𝒜 → C^𝒜 → 𝒜_sup → inf F^ω(A) → existence → SUP^ω →
/// local controllers. `plant` and `spec` are already composed.
pub fn run_stages(plant: Automaton, spec: Automaton, legal: &Automaton, minimal: &Automaton) -> Result<Artifacts> {
    finish(prepare(plant, spec, legal)?, minimal)
}

/// A Büchi automaton accepting exactly u·v^ω.
fn lasso_automaton(w: &LassoWord, al: &omegaloc_core::Alphabet) -> Automaton {
    let (s, c) = (w.stem.len(), w.cycle.len());
    let mut a = Automaton::new("A", Kind::Buchi, al.clone(), s + c);
    for (i, &e) in w.stem.iter().chain(&w.cycle).enumerate() {
        let t = if i + 1 == s + c { s } else { i + 1 };
        a.set(i, e, t);
    }
    a.buchi.insert(s);
    a
}

/// A random instance of the whole chain, or `None` if this seed gives an
/// empty supervisor at some stage. The minimal specification is random when
/// that passes the existence check, otherwise a single lasso of sup C^ω.
pub fn random_toy_pipeline(seed: u64) -> Option<Artifacts> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let k = r.gen_range(2..=3);
    let al = random_alphabet(&mut r, k, 0.5);
    if al.controllable().count() == 0 {
        return None;
    }
    let n = r.gen_range(2..=5);
    let density = r.gen_range(0.5..0.9);
    let g = random_automaton(&mut r, "G", Kind::Buchi, &al, n, density);
    let live = live_states(&g, &Acceptance::buchi_of(&g));
    let plant = restrict(&g, &live);
    let m = r.gen_range(1..=3);
    let spec = random_automaton(&mut r, "E", Kind::Star, &al, m, 0.8);
    let l = r.gen_range(1..=3);
    let mut legal = random_automaton(&mut r, "El", Kind::RabinBuchi, &al, l, 0.9);
    legal.rabin = vec![RabinPair {
        r: random_subset(&mut r, l, 0.5),
        i: random_subset(&mut r, l, 0.85),
    }];
    let na = r.gen_range(1..=2);
    let mut minimal = random_automaton(&mut r, "A", Kind::Buchi, &al, na, 0.6);
    if plant.is_empty() {
        return None;
    }
    let prep = prepare(plant, spec, &legal).ok()?;
    if prep.asup.is_empty() {
        return None;
    }
    let inf = inf_closure(&minimal, &prep.controlled).ok()?;
    if !matches!(existence_check(&inf, &prep.asup).ok()?, Existence::Holds(_)) {
        let none = Automaton::empty("none", Kind::Buchi, al.clone());
        let pair = prep.asup.rabin[0].clone();
        let w = omega_contained(&prep.asup, &Acceptance::Rabin(pair), &none, &Acceptance::buchi_of(&none))
            .ok()??;
        minimal = lasso_automaton(&w, &al);
    }
    finish(prep, &minimal).ok()
}

/// The first `count` seeds from `seed` on that give a complete run.
pub fn toy_pipelines(seed: u64, count: usize) -> Vec<(u64, Artifacts)> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        if let Some(a) = random_toy_pipeline(s) {
            out.push((s, a));
        }
        s = s.wrapping_add(1);
    }
    out
}
