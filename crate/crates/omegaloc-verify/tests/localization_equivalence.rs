use omegaloc_core::format::parse;
use omegaloc_core::ops::run_star;
use omegaloc_core::{run_lasso, Automaton};
use omegaloc_local::{
    profile_liveness, profile_safety, ControllerKind, EnableDisableProfile, LocalController, Part, Scope,
};
use omegaloc_synth::{compose_plant, compose_spec};
use omegaloc_verify::*;

macro_rules! model {
    ($f:literal) => {
        parse(include_str!(concat!("../../../models/small-factory/", $f))).unwrap()
    };
}

fn small_factory() -> Artifacts {
    let comps: Vec<Automaton> = vec![
        model!("m1.aut"),
        model!("m2.aut"),
        model!("buf1.aut"),
        model!("buf2.aut"),
        model!("f1.aut"),
        model!("f2.aut"),
    ];
    let plant = compose_plant(&comps.iter().collect::<Vec<_>>()).unwrap();
    let specs: Vec<Automaton> = vec![model!("bufspec1.aut"), model!("bufspec2.aut"), model!("muxspec.aut")];
    let spec = compose_spec(&specs.iter().collect::<Vec<_>>(), plant.alphabet()).unwrap();
    run_stages(plant, spec, &model!("maxspec.aut"), &model!("minspec.aut")).unwrap()
}

fn finite(x: &Artifacts, ctrls: &[LocalController]) -> EquivalenceReport {
    check_finite_equivalence(&x.plant, &x.sup.automaton, &x.omega.automaton, ctrls).unwrap()
}

fn properties_fail(x: &Artifacts, ctrls: &[LocalController]) -> bool {
    !check_controller_properties(
        &x.plant,
        &x.sup.automaton,
        &x.controlled,
        &x.omega.automaton,
        &x.omega.tracker,
        x.omega.sink,
        ctrls,
    )
    .unwrap()
    .is_empty()
}

fn profile_of(x: &Artifacts, l: &LocalController) -> EnableDisableProfile {
    match l.kind {
        ControllerKind::Safety => profile_safety(&x.plant, &x.sup.automaton, l.event).unwrap(),
        ControllerKind::Liveness => {
            let scope = Scope { tracker: &x.omega.tracker, sink: x.omega.sink, part: l.part };
            profile_liveness(&x.controlled, &x.omega.automaton, l.event, &scope).unwrap()
        }
    }
}

#[test]
fn small_factory_controllers_match_supervisors() {
    let x = small_factory();
    let f = finite(&x, &x.loc.controllers);
    assert!(f.finite_ok, "{:?}", f);
    let inf = check_infinite_equivalence(
        &x.plant,
        &x.sup.automaton,
        &x.omega.automaton,
        &x.loc.controllers,
        &f,
        500,
        1,
    )
    .unwrap();
    assert!(inf.infinite_ok, "{:?}", inf);
    assert_eq!(inf.checked_lassos, 500);
    assert!(!properties_fail(&x, &x.loc.controllers));
}

#[test]
fn zero_lassos_is_tier_one_only() {
    let x = small_factory();
    let f = finite(&x, &x.loc.controllers);
    let inf =
        check_infinite_equivalence(&x.plant, &x.sup.automaton, &x.omega.automaton, &x.loc.controllers, &f, 0, 1)
            .unwrap();
    assert!(inf.infinite_ok);
    assert_eq!(inf.checked_lassos, 0);
}

#[test]
fn parents_as_controllers() {
    let x = small_factory();
    let wrap = |a: &Automaton, kind| LocalController {
        automaton: a.clone(),
        event: 0,
        kind,
        part: Part::None,
        congruence: omegaloc_local::ControlCongruence::identity(a.num_states()),
    };
    let ctrls = vec![
        wrap(&x.sup.automaton, ControllerKind::Safety),
        wrap(&x.omega.automaton, ControllerKind::Liveness),
    ];
    assert!(finite(&x, &ctrls).finite_ok);
}

#[test]
fn every_single_deletion_breaks_finite_equivalence() {
    let x = small_factory();
    for (k, c) in x.loc.controllers.iter().enumerate() {
        for (state, event, _) in c.automaton.transitions() {
            let m = Mutation::Delete { controller: k, state, event };
            let r = finite(&x, &apply(&x.loc.controllers, m));
            assert!(!r.finite_ok, "{m:?}");
            // the counterexample replays: exactly one side accepts it
            let Some(Witness::Word(w)) = &r.witness else { panic!("no witness") };
            let mutated = apply(&x.loc.controllers, m);
            let lhs = run_star(&x.plant, w).is_some() && mutated.iter().all(|c| run_star(&c.automaton, w).is_some());
            let sub_ok = |k: &str| r.sub_results[k];
            if !sub_ok("finite_combined") {
                assert_ne!(lhs, run_star(&x.omega.automaton, w).is_some());
            }
        }
    }
}

#[test]
fn random_mutations_are_caught() {
    let x = small_factory();
    let ctrls = &x.loc.controllers;
    let profiles: Vec<EnableDisableProfile> = ctrls.iter().map(|l| profile_of(&x, l)).collect();
    let add_ok = |k: usize, cell: usize| ctrls[k].congruence.cells[cell].iter().any(|&s| profiles[k].disable[s]);
    let ms = random_mutations(ctrls, 20, 7, add_ok);
    assert_eq!(ms.len(), 20);
    for m in ms {
        let mutated = apply(ctrls, m);
        let f = finite(&x, &mutated);
        assert!(!f.finite_ok || properties_fail(&x, &mutated), "{m:?}");
    }
}

#[test]
fn sampled_lasso_witness_replays() {
    let x = small_factory();
    // drop one controller entirely: more is allowed, some sampled lasso may expose it
    let f = finite(&x, &x.loc.controllers[1..]);
    assert!(!f.finite_ok);
    let inf = check_infinite_equivalence(
        &x.plant,
        &x.sup.automaton,
        &x.omega.automaton,
        &x.loc.controllers[1..],
        &f,
        300,
        5,
    )
    .unwrap();
    assert!(!inf.infinite_ok);
    if let Some(Witness::Lasso(w)) = &inf.witness {
        let fair = run_lasso(&x.plant, w).buchi(&x.plant.buchi);
        assert!(fair);
    }
}

#[test]
fn toy_pipelines_controllers_match_supervisors() {
    for (seed, x) in toy_pipelines(100, 20) {
        let f = finite(&x, &x.loc.controllers);
        assert!(f.finite_ok, "seed {seed}: {:?}", f.counterexample);
        let inf = check_infinite_equivalence(
            &x.plant,
            &x.sup.automaton,
            &x.omega.automaton,
            &x.loc.controllers,
            &f,
            100,
            seed,
        )
        .unwrap();
        assert!(inf.infinite_ok, "seed {seed}: {:?}", inf.counterexample);
        assert!(!properties_fail(&x, &x.loc.controllers), "seed {seed}");
        for u in &x.loc.undivided {
            for part in [Part::C1, Part::C2] {
                let l = x.loc.find(u.event, ControllerKind::Liveness, part).unwrap();
                assert!(l.num_states() <= u.num_states(), "seed {seed}");
            }
        }
    }
}

/// inf F^ω(A) ⊆ S(G^{f*}) ∩ lim L(SUP^ω) ⊆ E_l (through 𝒜's Rabin layer),
/// SUP^ω controllable w.r.t. G^{f*}, and every SUP^ω state live.
fn sandwich(x: &Artifacts) {
    use omegaloc_core::lang::{live_states, omega_contained, Acceptance};
    use omegaloc_core::ops::buchi_intersection;
    let t = buchi_intersection(&x.controlled, &x.omega.automaton.limit()).unwrap();
    let bt = Acceptance::buchi_of(&t);
    assert_eq!(omega_contained(&x.inf, &Acceptance::buchi_of(&x.inf), &t, &bt).unwrap(), None);
    assert_eq!(omega_contained(&t, &bt, &x.a, &Acceptance::rabin_of(&x.a)).unwrap(), None);
    assert!(omegaloc_synth::check_star_controllability(&x.controlled, &x.omega.automaton)
        .unwrap()
        .is_none());
    let w = x.omega.with_acceptance();
    assert!(live_states(&w, &Acceptance::buchi_of(&w)).iter().all(|&l| l));
}

#[test]
fn liveness_supervisor_sandwich() {
    sandwich(&small_factory());
    for (_, x) in toy_pipelines(500, 40) {
        sandwich(&x);
    }
}
