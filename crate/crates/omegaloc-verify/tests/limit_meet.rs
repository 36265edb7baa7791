use omegaloc_core::ops::meet;
use omegaloc_core::random::walk_lasso;
use omegaloc_core::{run_lasso, Alphabet, Automaton, Kind};
use omegaloc_verify::limit_meet_harness;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_pairs_have_no_violations() {
    let r = limit_meet_harness(100, 50, 5, 11);
    assert_eq!(r.violations, 0);
    assert!(r.in_both > 0 && r.in_meet > 0);
    assert!(r.in_both < r.trials * r.lassos_per_trial);
}

#[test]
fn equal_operands() {
    let al = Alphabet::from_pairs(&[("a", true), ("b", false)]).unwrap();
    let mut a = Automaton::new("A", Kind::Star, al, 2);
    a.set(0, 0, 1);
    a.set(1, 1, 0);
    a.set(1, 0, 1);
    let c = meet(&a, &a).unwrap().0;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let w = walk_lasso(&mut rng, &a, 3).unwrap();
        assert!(run_lasso(&c, &w).in_limit());
    }
}

#[test]
fn disjoint_operands() {
    let al = Alphabet::from_pairs(&[("a", true), ("b", false)]).unwrap();
    let mut a = Automaton::new("A", Kind::Star, al.clone(), 1);
    a.set(0, 0, 0);
    let mut b = Automaton::new("B", Kind::Star, al, 1);
    b.set(0, 1, 0);
    let c = meet(&a, &b).unwrap().0;
    assert_eq!(c.num_transitions(), 0);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for src in [&a, &b] {
        let w = walk_lasso(&mut rng, src, 2).unwrap();
        let both = run_lasso(&a, &w).in_limit() && run_lasso(&b, &w).in_limit();
        assert!(!both);
        assert!(!run_lasso(&c, &w).in_limit());
    }
}
