//! Counts and sets describing an automaton, for `info` and the reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use omegaloc_core::ops::meet;
use omegaloc_core::{Automaton, EventId, Kind, StateId};

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RabinSummary {
    pub r: Vec<StateId>,
    pub i: Vec<StateId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub name: String,
    pub kind: String,
    pub states: usize,
    pub transitions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub buchi: Option<Vec<StateId>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rabin: Vec<RabinSummary>,
    pub controllable: Vec<String>,
    pub uncontrollable: Vec<String>,
}

impl Summary {
    pub fn of(a: &Automaton) -> Self {
        let al = a.alphabet();
        Summary {
            name: a.name.clone(),
            kind: a.kind.keyword().to_string(),
            states: a.num_states(),
            transitions: a.num_transitions(),
            buchi: (a.kind != Kind::Star).then(|| a.buchi.iter().copied().collect()),
            rabin: a
                .rabin
                .iter()
                .map(|p| RabinSummary { r: p.r.iter().copied().collect(), i: p.i.iter().copied().collect() })
                .collect(),
            controllable: al.controllable().map(|e| al.label(e).to_string()).collect(),
            uncontrollable: al.uncontrollable().map(|e| al.label(e).to_string()).collect(),
        }
    }

    pub fn headline(&self) -> String {
        let mut s = format!("{} states, {} transitions", self.states, self.transitions);
        if let Some(b) = &self.buchi {
            let _ = write!(s, ", Büchi |B|={}", b.len());
        }
        s
    }

    /// Multi-line text for `info`.
    pub fn render(&self) -> String {
        let ids = |v: &[StateId]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, "automaton {} ({})", self.name, self.kind);
        let _ = writeln!(s, "{}", self.headline());
        if let Some(b) = &self.buchi {
            let _ = writeln!(s, "buchi: {{{}}}", ids(b));
        }
        for (k, p) in self.rabin.iter().enumerate() {
            let _ = writeln!(s, "rabin pair {}: |R|={} R={{{}}}, |I|={} I={{{}}}", k + 1, p.r.len(), ids(&p.r), p.i.len(), ids(&p.i));
        }
        let _ = writeln!(s, "controllable: {}", self.controllable.join(" "));
        let _ = writeln!(s, "uncontrollable: {}", self.uncontrollable.join(" "));
        s
    }
}

/// For every event, the states of `sup` at which `plant` defines it after
/// some string of L(sup) but `sup` does not.
pub fn disablements(sup: &Automaton, plant: &Automaton) -> Result<BTreeMap<EventId, BTreeSet<StateId>>> {
    let (_, pairs) = meet(&sup.with_kind(Kind::Star), &plant.with_kind(Kind::Star))?;
    let mut out: BTreeMap<EventId, BTreeSet<StateId>> = BTreeMap::new();
    for &(x, p) in &pairs {
        for e in plant.enabled(p) {
            if sup.next(x, e).is_none() {
                out.entry(e).or_default().insert(x);
            }
        }
    }
    Ok(out)
}

/// Event ids replaced by labels.
pub fn by_label<V: Clone>(a: &Automaton, m: &BTreeMap<EventId, V>) -> BTreeMap<String, V> {
    m.iter().map(|(&e, v)| (a.alphabet().label(e).to_string(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use omegaloc_core::Alphabet;

    #[test]
    fn star_has_no_acceptance_lines() {
        let al = Alphabet::from_pairs(&[("a", true), ("u", false)]).unwrap();
        let mut a = Automaton::new("S", Kind::Star, al, 2);
        a.set(0, 0, 1);
        let s = Summary::of(&a);
        assert_eq!(s.headline(), "2 states, 1 transitions");
        assert!(!s.render().contains("buchi") && !s.render().contains("rabin"));
    }

    #[test]
    fn disabled_where_plant_allows() {
        let al = Alphabet::from_pairs(&[("a", true), ("b", true)]).unwrap();
        let mut g = Automaton::new("G", Kind::Buchi, al.clone(), 1);
        g.set(0, 0, 0);
        g.set(0, 1, 0);
        let mut s = Automaton::new("S", Kind::Star, al, 2);
        s.set(0, 0, 1);
        s.set(1, 1, 0);
        let d = disablements(&s, &g).unwrap();
        assert_eq!(d[&1], [0].into());
        assert_eq!(d[&0], [1].into());
    }
}
