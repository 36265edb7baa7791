use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an event inside an [`Alphabet`].
pub type EventId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Event {
    pub label: String,
    pub controllable: bool,
}

impl Event {
    pub fn new(label: impl Into<String>, controllable: bool) -> Self {
        Event {
            label: label.into(),
            controllable,
        }
    }
}

/// A finite event set partitioned into controllable and uncontrollable events.
///
/// Events are kept sorted by label, so an [`EventId`] is the lexicographic
/// rank of the label. Every iteration over events in this workspace follows
/// that order, which is what makes BFS numberings reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    events: Vec<Event>,
}

impl Alphabet {
    pub fn new(events: impl IntoIterator<Item = Event>) -> Result<Self> {
        let mut events: Vec<Event> = events.into_iter().collect();
        events.sort_by(|a, b| a.label.cmp(&b.label));
        let mut out: Vec<Event> = Vec::with_capacity(events.len());
        for e in events {
            if e.label.is_empty() || e.label.chars().any(|c| c.is_whitespace() || c == ';') {
                return Err(Error::Unsupported(format!("bad event label `{}`", e.label)));
            }
            match out.last() {
                Some(last) if last.label == e.label => {
                    if last.controllable != e.controllable {
                        return Err(Error::AlphabetMismatch(format!(
                            "event `{}` declared both controllable and uncontrollable",
                            e.label
                        )));
                    }
                }
                _ => out.push(e),
            }
        }
        Ok(Alphabet { events: out })
    }

    /// Shorthand for tests and examples: `("a", true)` is controllable.
    pub fn from_pairs(pairs: &[(&str, bool)]) -> Result<Self> {
        Self::new(pairs.iter().map(|(l, c)| Event::new(*l, *c)))
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn label(&self, e: EventId) -> &str {
        &self.events[e].label
    }

    pub fn is_controllable(&self, e: EventId) -> bool {
        self.events[e].controllable
    }

    pub fn index(&self, label: &str) -> Option<EventId> {
        self.events
            .binary_search_by(|ev| ev.label.as_str().cmp(label))
            .ok()
    }

    pub fn index_or_err(&self, label: &str) -> Result<EventId> {
        self.index(label)
            .ok_or_else(|| Error::UnknownEvent(label.to_string()))
    }

    pub fn ids(&self) -> std::ops::Range<EventId> {
        0..self.events.len()
    }

    pub fn controllable(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(move |&e| self.events[e].controllable)
    }

    pub fn uncontrollable(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(move |&e| !self.events[e].controllable)
    }

    /// True if every event of `other` occurs here with the same controllability.
    pub fn includes(&self, other: &Alphabet) -> bool {
        other
            .events
            .iter()
            .all(|e| self.index(&e.label).map(|i| self.events[i] == *e).unwrap_or(false))
    }

    pub fn union<'a>(parts: impl IntoIterator<Item = &'a Alphabet>) -> Result<Alphabet> {
        Alphabet::new(parts.into_iter().flat_map(|a| a.events.iter().cloned()))
    }

    /// Translate a label sequence into event ids.
    pub fn word(&self, labels: &[&str]) -> Result<Vec<EventId>> {
        labels.iter().map(|l| self.index_or_err(l)).collect()
    }

    pub fn labels(&self, word: &[EventId]) -> Vec<String> {
        word.iter().map(|&e| self.label(e).to_string()).collect()
    }

    pub fn require_same(&self, other: &Alphabet, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(what.to_string()))
        }
    }
}
