use omegaloc_core::ops::{explore, lift_alphabet, sync_product};
use omegaloc_core::{Alphabet, Automaton, Kind, StateId};

use crate::error::Result;

/// Compose plant components over the union alphabet. *-components are
/// synchronised; Büchi components (fairness assumptions) are lifted to the
/// global alphabet, so the result's ω-language is
/// lim(L(‖ star parts)) ∩ ⋂ S(Büchi parts).
///
/// The conjunction of k Büchi conditions is degeneralised with one
/// round-robin counter per rotation of the component list; a state is
/// accepting if some counter sits at its first set on an accepting state.
/// Each counter alone is exact, so the union is too, and the accepting set
/// does not depend on the order in which the components are listed.
pub fn compose_plant(components: &[&Automaton]) -> Result<Automaton> {
    let global = Alphabet::union(components.iter().map(|c| c.alphabet()))?;
    let name = components.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join("||");
    let stars: Vec<&Automaton> = components.iter().copied().filter(|c| c.kind == Kind::Star).collect();
    let base = sync_product(&stars, &global)?;
    let fair: Vec<Automaton> = components
        .iter()
        .filter(|c| c.kind != Kind::Star)
        .map(|c| lift_alphabet(&c.with_kind(Kind::Buchi), &global))
        .collect::<std::result::Result<_, _>>()?;
    let k = fair.len();
    if k == 0 || base.is_empty() || fair.iter().any(|f| f.is_empty()) {
        let mut p = base.limit();
        if k > 0 && fair.iter().any(|f| f.is_empty()) {
            p = Automaton::empty(&name, Kind::Buchi, global);
        }
        p.name = name;
        return Ok(p);
    }

    type Key = (StateId, Vec<StateId>, Vec<usize>);
    let init: Key = (
        base.initial().unwrap(),
        fair.iter().map(|f| f.initial().unwrap()).collect(),
        vec![0; k],
    );
    let (mut plant, keys) = explore(&name, Kind::Buchi, &global, init, |(p, fs, cs), e| {
        let p2 = base.next(*p, e)?;
        let mut fs2 = Vec::with_capacity(k);
        for (j, f) in fair.iter().enumerate() {
            fs2.push(f.next(fs[j], e)?);
        }
        let cs2 = (0..k)
            .map(|r| {
                let waiting = (r + cs[r]) % k;
                if fair[waiting].buchi.contains(&fs[waiting]) {
                    (cs[r] + 1) % k
                } else {
                    cs[r]
                }
            })
            .collect();
        Some((p2, fs2, cs2))
    });
    plant.buchi = keys
        .iter()
        .enumerate()
        .filter(|(_, (_, fs, cs))| (0..k).any(|r| cs[r] == 0 && fair[r].buchi.contains(&fs[r])))
        .map(|(i, _)| i)
        .collect();
    Ok(plant)
}

/// Synchronous product of *-specifications over `global`.
pub fn compose_spec(components: &[&Automaton], global: &Alphabet) -> Result<Automaton> {
    Ok(sync_product(components, global)?)
}
