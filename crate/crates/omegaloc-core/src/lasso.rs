use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::alphabet::{Alphabet, EventId};
use crate::automaton::{Automaton, Kind, RabinPair, StateSet};
use crate::error::{Error, Result};

/// The ultimately periodic word `stem · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LassoWord {
    pub stem: Vec<EventId>,
    pub cycle: Vec<EventId>,
}

impl LassoWord {
    pub fn new(stem: Vec<EventId>, cycle: Vec<EventId>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        LassoWord { stem, cycle }
    }

    pub fn from_labels(alphabet: &Alphabet, stem: &[&str], cycle: &[&str]) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Unsupported("empty lasso cycle".into()));
        }
        Ok(LassoWord::new(alphabet.word(stem)?, alphabet.word(cycle)?))
    }

    /// Parse `a b ; c d` (stem ; cycle).
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let (stem, cycle) = text
            .split_once(';')
            .ok_or_else(|| Error::Unsupported(format!("lasso `{text}` lacks `;`")))?;
        let stem: Vec<&str> = stem.split_whitespace().collect();
        let cycle: Vec<&str> = cycle.split_whitespace().collect();
        Self::from_labels(alphabet, &stem, &cycle)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> LassoDisplay<'a> {
        LassoDisplay { w: self, alphabet }
    }

    /// `(stem·cycle) · cycle^ω`, the same ω-word.
    pub fn unrolled(&self) -> LassoWord {
        let mut stem = self.stem.clone();
        stem.extend_from_slice(&self.cycle);
        LassoWord::new(stem, self.cycle.clone())
    }
}

pub struct LassoDisplay<'a> {
    w: &'a LassoWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stem = self.alphabet.labels(&self.w.stem).join(" ");
        let cycle = self.alphabet.labels(&self.w.cycle).join(" ");
        if stem.is_empty() {
            write!(f, "; {cycle}")
        } else {
            write!(f, "{stem} ; {cycle}")
        }
    }
}

/// Outcome of running a lasso forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoRun {
    /// `None` if some prefix has no run.
    pub inf: Option<StateSet>,
}

impl LassoRun {
    /// Every prefix of the word is in the *-language, i.e. the word is in
    /// lim(L(a)).
    pub fn in_limit(&self) -> bool {
        self.inf.is_some()
    }

    pub fn buchi(&self, set: &StateSet) -> bool {
        self.inf.as_ref().is_some_and(|inf| !inf.is_disjoint(set))
    }

    pub fn rabin(&self, pair: &RabinPair) -> bool {
        self.inf
            .as_ref()
            .is_some_and(|inf| !inf.is_disjoint(&pair.r) && inf.is_subset(&pair.i))
    }
}

/// Run `w` on `a`. The stem is executed, then the cycle is iterated until a
/// (state, cycle position) pair repeats; the states of the repeating segment
/// are the infinitely visited ones.
pub fn run_lasso(a: &Automaton, w: &LassoWord) -> LassoRun {
    let none = LassoRun { inf: None };
    let Some(mut q) = a.initial() else {
        return none;
    };
    for &e in &w.stem {
        match a.next(q, e) {
            Some(t) => q = t,
            None => return none,
        }
    }
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut trace: Vec<usize> = Vec::new();
    let mut pos = 0;
    loop {
        if let Some(&start) = seen.get(&(q, pos)) {
            return LassoRun {
                inf: Some(trace[start..].iter().copied().collect()),
            };
        }
        seen.insert((q, pos), trace.len());
        trace.push(q);
        match a.next(q, w.cycle[pos]) {
            Some(t) => q = t,
            None => return none,
        }
        pos = (pos + 1) % w.cycle.len();
    }
}

/// Verdict of an automaton on a lasso, per declared acceptance layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// The word lies in lim of the *-language.
    pub limit: bool,
    pub buchi: Option<bool>,
    /// Accepted by some Rabin pair.
    pub rabin: Option<bool>,
}

pub fn verdict(a: &Automaton, w: &LassoWord) -> Verdict {
    let run = run_lasso(a, w);
    Verdict {
        limit: run.in_limit(),
        buchi: (a.kind != Kind::Star).then(|| run.buchi(&a.buchi)),
        rabin: (a.kind == Kind::RabinBuchi).then(|| a.rabin.iter().any(|p| run.rabin(p))),
    }
}
