//! Random instances for tests and stochastic verification.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Alphabet, Event};
use crate::automaton::{Automaton, Kind, StateSet};
use crate::lasso::LassoWord;

/// `n` events `e0..`, each controllable with probability `p_ctrl`.
pub fn random_alphabet<R: Rng>(rng: &mut R, n: usize, p_ctrl: f64) -> Alphabet {
    Alphabet::new((0..n).map(|i| Event::new(format!("e{i}"), rng.gen_bool(p_ctrl))))
        .expect("generated labels are distinct")
}

/// A deterministic automaton with `n >= 1` states, all reachable from 0.
/// Each further (state, event) slot is filled with probability `density`.
pub fn random_automaton<R: Rng>(
    rng: &mut R,
    name: &str,
    kind: Kind,
    alphabet: &Alphabet,
    n: usize,
    density: f64,
) -> Automaton {
    assert!(n >= 1 && !alphabet.is_empty());
    let mut a = Automaton::new(name, kind, alphabet.clone(), n);
    // spanning tree first
    for q in 1..n {
        loop {
            let p = rng.gen_range(0..q);
            let e = rng.gen_range(0..alphabet.len());
            if a.next(p, e).is_none() {
                a.set(p, e, q);
                break;
            }
            // every slot of p may be taken; fall back to any free slot below q
            if (0..q).all(|p| a.enabled(p).count() == alphabet.len()) {
                panic!("alphabet too small for a connected automaton with {n} states");
            }
        }
    }
    for q in 0..n {
        for e in alphabet.ids() {
            if a.next(q, e).is_none() && rng.gen_bool(density) {
                a.set(q, e, rng.gen_range(0..n));
            }
        }
    }
    if kind != Kind::Star {
        a.buchi = random_subset(rng, n, 0.4);
    }
    a
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize, p: f64) -> StateSet {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Uniform lasso with stem length `0..=max_stem` and cycle length
/// `1..=max_cycle`.
pub fn random_lasso<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_stem: usize, max_cycle: usize) -> LassoWord {
    let k = alphabet.len();
    let stem = (0..rng.gen_range(0..=max_stem)).map(|_| rng.gen_range(0..k)).collect();
    let cycle = (0..rng.gen_range(1..=max_cycle.max(1))).map(|_| rng.gen_range(0..k)).collect();
    LassoWord::new(stem, cycle)
}

/// A lasso in lim(L(a)) found by a random walk: walk at least `min_len`
/// steps, then stop at the first revisited state and close the cycle there.
/// `None` if the walk gets stuck.
pub fn walk_lasso<R: Rng>(rng: &mut R, a: &Automaton, min_len: usize) -> Option<LassoWord> {
    let mut q = a.initial()?;
    let mut states = vec![q];
    let mut word = Vec::new();
    loop {
        let en: Vec<_> = a.enabled(q).collect();
        let &e = en.choose(rng)?;
        q = a.next(q, e).unwrap();
        word.push(e);
        if word.len() >= min_len {
            if let Some(pos) = states.iter().rposition(|&s| s == q) {
                let cycle = word[pos..].to_vec();
                word.truncate(pos);
                return Some(LassoWord::new(word, cycle));
            }
        }
        states.push(q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::run_lasso;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_and_walkable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let al = random_alphabet(&mut rng, 3, 0.5);
            let a = random_automaton(&mut rng, "r", Kind::Buchi, &al, 6, 0.5);
            let t = crate::ops::reachable_trim(&a);
            assert_eq!(t.num_states(), 6);
            if let Some(w) = walk_lasso(&mut rng, &a, 4) {
                assert!(run_lasso(&a, &w).in_limit());
            }
        }
    }
}
