//! lim(A) ∩ lim(B) = lim(A ∩ B) for prefix-closed A, B, on random
//! instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use omegaloc_core::ops::meet;
use omegaloc_core::random::{random_alphabet, random_automaton, random_lasso, walk_lasso};
use omegaloc_core::{run_lasso, Kind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitMeetReport {
    pub trials: usize,
    pub lassos_per_trial: usize,
    pub violations: usize,
    /// Lassos in lim(A) ∩ lim(B) (exercising ⊆).
    pub in_both: usize,
    /// Lassos in lim(C) (exercising ⊇).
    pub in_meet: usize,
    pub seed: u64,
}

/// `trials` random pairs of *-automata with at most `max_states` states over
/// one alphabet, C built as their product, `lassos` lassos each. Lassos are
/// walks on C, on A, on B, and uniform words in turn.
pub fn limit_meet_harness(trials: usize, lassos: usize, max_states: usize, seed: u64) -> LimitMeetReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LimitMeetReport {
        trials,
        lassos_per_trial: lassos,
        violations: 0,
        in_both: 0,
        in_meet: 0,
        seed,
    };
    for _ in 0..trials {
        let k = rng.gen_range(2..=3);
        let al = random_alphabet(&mut rng, k, 0.5);
        let (n, m) = (rng.gen_range(1..=max_states), rng.gen_range(1..=max_states));
        let da = rng.gen_range(0.4..0.8);
        let db = rng.gen_range(0.4..0.8);
        let a = random_automaton(&mut rng, "A", Kind::Star, &al, n, da);
        let b = if rng.gen_bool(0.1) {
            a.clone()
        } else {
            random_automaton(&mut rng, "B", Kind::Star, &al, m, db)
        };
        let c = meet(&a, &b).expect("same alphabet").0;
        for i in 0..lassos {
            let walked = match i % 4 {
                0 => walk_lasso(&mut rng, &c, 1),
                1 => walk_lasso(&mut rng, &a, 1),
                2 => walk_lasso(&mut rng, &b, 1),
                _ => None,
            };
            let w = walked.unwrap_or_else(|| random_lasso(&mut rng, &al, 4, 4));
            let both = run_lasso(&a, &w).in_limit() && run_lasso(&b, &w).in_limit();
            let in_c = run_lasso(&c, &w).in_limit();
            report.in_both += usize::from(both);
            report.in_meet += usize::from(in_c);
            if both != in_c {
                report.violations += 1;
            }
        }
    }
    report
}
