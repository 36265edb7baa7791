//! Deterministic automata over finite alphabets with controllable and
//! uncontrollable events.
//!
//! One [`Automaton`] type carries a *-language (strings with a defined run,
//! prefix-closed), optionally a Büchi ω-language, and optionally Rabin
//! pairs. A run is accepted by a Rabin pair `(R, I)` iff the states visited
//! infinitely often meet `R` and are all inside `I`.
//!
//! Since every automaton is deterministic, containment of ω-languages is
//! decided on the product with the totalized right-hand side: a violating
//! lasso exists iff some strongly connected component of that product
//! satisfies the left condition and violates the right one.

pub mod alphabet;
pub mod automaton;
pub mod dot;
pub mod error;
pub mod format;
pub mod graph;
pub mod lang;
pub mod lasso;
pub mod ops;
pub mod random;

pub use alphabet::{Alphabet, Event, EventId};
pub use automaton::{Automaton, Kind, RabinPair, StateId, StateSet};
pub use error::{Error, Result};
pub use lang::Acceptance;
pub use lasso::{run_lasso, verdict, LassoRun, LassoWord, Verdict};
