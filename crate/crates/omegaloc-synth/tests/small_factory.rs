use std::collections::BTreeMap;

use omegaloc_core::format::parse;
use omegaloc_core::Automaton;
use omegaloc_synth::*;

macro_rules! model {
    ($f:literal) => {
        parse(include_str!(concat!("../../../models/small-factory/", $f))).unwrap()
    };
}

struct Sf {
    plant: Automaton,
    sup: SafetySupervisor,
    a: Automaton,
    c: ControllabilityResult,
    w: OmegaSupervisor,
}

fn pipeline() -> Sf {
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
    let sup = sup_con_star(&plant, &spec).unwrap();
    let g = controlled_plant(&sup);
    let a = build_rabin_buchi(&g, &model!("maxspec.aut")).unwrap();
    assert!(uncontrollable_exits(&a, &g).unwrap().is_empty());
    let c = controllability_subset(&a).unwrap();
    let asup = restrict_sup(&a, &c);
    let minimal = model!("minspec.aut");
    let inf = inf_closure(&minimal, &g).unwrap();
    let Existence::Holds(proof) = existence_check(&inf, &asup).unwrap() else {
        panic!("existence check failed")
    };
    let w = assemble_fomega(&asup, &c, &minimal, &proof).unwrap();
    Sf { plant, sup, a, c, w }
}

#[test]
fn safety_supervisor_counts() {
    let sf = pipeline();
    assert_eq!(sf.sup.automaton.num_states(), 8);
    assert_eq!(sf.sup.automaton.num_transitions(), 14);
    assert_eq!(sf.sup.buchi_lift.len(), 5);
    assert!(check_star_controllability(&sf.plant, &sf.sup.automaton).unwrap().is_none());
}

#[test]
fn buchi_lift_is_order_independent() {
    let sf = pipeline();
    let comps: Vec<Automaton> = vec![
        model!("f2.aut"),
        model!("buf2.aut"),
        model!("m2.aut"),
        model!("f1.aut"),
        model!("buf1.aut"),
        model!("m1.aut"),
    ];
    let plant = compose_plant(&comps.iter().collect::<Vec<_>>()).unwrap();
    let specs: Vec<Automaton> = vec![model!("muxspec.aut"), model!("bufspec2.aut"), model!("bufspec1.aut")];
    let spec = compose_spec(&specs.iter().collect::<Vec<_>>(), plant.alphabet()).unwrap();
    let sup = sup_con_star(&plant, &spec).unwrap();
    assert_eq!(sup, sf.sup);
}

#[test]
fn omega_pipeline() {
    let sf = pipeline();
    let pair = sf.a.single_pair().unwrap();
    assert_eq!(sf.a.num_states(), 25);
    assert_eq!(sf.a.num_transitions(), 44);
    assert_eq!(sf.a.buchi.len(), 17);
    assert_eq!(pair.r.len(), 4);
    assert_eq!(pair.i.len(), 25);
    // every state is winning, only controllable events are ever dropped
    assert_eq!(sf.c.subset.len(), sf.a.num_states());
    let mut per_event: BTreeMap<String, usize> = BTreeMap::new();
    for (_, d) in sf.c.drops(&sf.a) {
        for e in d {
            assert!(sf.a.alphabet().is_controllable(e));
            *per_event.entry(sf.a.alphabet().label(e).to_string()).or_default() += 1;
        }
    }
    assert_eq!(per_event.get("a1"), Some(&3));
    assert_eq!(per_event.get("a2"), Some(&3));

    let g = controlled_plant(&sf.sup);
    assert!(check_star_controllability(&g, &sf.w.automaton).unwrap().is_none());
    assert!(omegaloc_core::lang::star_contained(&sf.w.automaton, &g).unwrap().is_none());
    let w = sf.w.with_acceptance();
    let live = omegaloc_core::lang::live_states(&w, &omegaloc_core::Acceptance::buchi_of(&w));
    assert!(live.iter().all(|&l| l));
}

#[test]
fn psi_at_the_start_enables_both_machines() {
    let sf = pipeline();
    let al = sf.w.automaton.alphabet();
    let both: std::collections::BTreeSet<_> = [al.index("a1").unwrap(), al.index("a2").unwrap()].into();
    assert_eq!(sf.w.psi[0], both);
    assert!(sf.w.in_pre_a(0));
}
