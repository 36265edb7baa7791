use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Alphabet, EventId};

pub type StateId = usize;
pub type StateSet = BTreeSet<StateId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Star,
    Buchi,
    RabinBuchi,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Star => "star",
            Kind::Buchi => "buchi",
            Kind::RabinBuchi => "rabin-buchi",
        }
    }
}

/// One Rabin pair. A run is accepted by the pair iff the set of states it
/// visits infinitely often meets `r` and is contained in `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RabinPair {
    pub r: StateSet,
    pub i: StateSet,
}

/// A deterministic automaton over a fixed alphabet.
///
/// The same structure carries three readings:
/// * `Star`: the *-language is the set of strings with a defined run
///   (every state is accepting, so the language is prefix-closed);
/// * `Buchi`: additionally an ω-language given by `buchi`;
/// * `RabinBuchi`: a Büchi layer plus Rabin `pairs` over the same states.
///
/// An automaton with zero states denotes the empty language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub name: String,
    pub kind: Kind,
    alphabet: Alphabet,
    initial: StateId,
    delta: Vec<Vec<Option<StateId>>>,
    pub buchi: StateSet,
    pub rabin: Vec<RabinPair>,
}

impl Automaton {
    pub fn new(name: impl Into<String>, kind: Kind, alphabet: Alphabet, states: usize) -> Self {
        let width = alphabet.len();
        Automaton {
            name: name.into(),
            kind,
            alphabet,
            initial: 0,
            delta: vec![vec![None; width]; states],
            buchi: StateSet::new(),
            rabin: Vec::new(),
        }
    }

    pub fn empty(name: impl Into<String>, kind: Kind, alphabet: Alphabet) -> Self {
        Self::new(name, kind, alphabet, 0)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.delta.len()
    }

    pub fn initial(&self) -> Option<StateId> {
        if self.is_empty() {
            None
        } else {
            Some(self.initial)
        }
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!(q < self.num_states(), "initial state out of range");
        self.initial = q;
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(vec![None; self.alphabet.len()]);
        self.delta.len() - 1
    }

    #[inline]
    pub fn next(&self, q: StateId, e: EventId) -> Option<StateId> {
        self.delta[q][e]
    }

    pub fn set(&mut self, q: StateId, e: EventId, t: StateId) {
        assert!(t < self.num_states(), "transition target out of range");
        self.delta[q][e] = Some(t);
    }

    pub fn remove(&mut self, q: StateId, e: EventId) {
        self.delta[q][e] = None;
    }

    pub fn enabled(&self, q: StateId) -> impl Iterator<Item = EventId> + '_ {
        self.delta[q]
            .iter()
            .enumerate()
            .filter_map(|(e, t)| t.map(|_| e))
    }

    pub fn successors(&self, q: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.delta[q].iter().filter_map(|t| *t)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, EventId, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(e, t)| t.map(|t| (q, e, t)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.delta
            .iter()
            .map(|row| row.iter().filter(|t| t.is_some()).count())
            .sum()
    }

    pub fn is_total(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(|t| t.is_some()))
    }

    pub fn all_states(&self) -> StateSet {
        self.states().collect()
    }

    /// The single Rabin pair, if there is exactly one.
    pub fn single_pair(&self) -> Option<&RabinPair> {
        match self.rabin.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }

    /// Copy with a different kind; acceptance data not meaningful for the
    /// new kind is dropped.
    pub fn with_kind(&self, kind: Kind) -> Automaton {
        let mut a = self.clone();
        a.kind = kind;
        if kind == Kind::Star {
            a.buchi.clear();
        }
        if kind != Kind::RabinBuchi {
            a.rabin.clear();
        }
        a
    }

    /// Büchi automaton on the same structure with every state accepting,
    /// i.e. the ω-language lim(L(self)).
    pub fn limit(&self) -> Automaton {
        let mut a = self.with_kind(Kind::Buchi);
        a.buchi = a.all_states();
        a
    }

    pub fn rename(mut self, name: impl Into<String>) -> Automaton {
        self.name = name.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_accessors() {
        let al = Alphabet::from_pairs(&[("a", true), ("b", false)]).unwrap();
        let mut a = Automaton::new("t", Kind::Star, al, 2);
        a.set(0, 0, 1);
        a.set(1, 1, 0);
        assert_eq!(a.num_transitions(), 2);
        assert_eq!(a.enabled(0).collect::<Vec<_>>(), vec![0]);
        assert!(!a.is_total());
        assert_eq!(a.initial(), Some(0));
        let e = Automaton::empty("e", Kind::Star, a.alphabet().clone());
        assert_eq!(e.initial(), None);
    }
}
