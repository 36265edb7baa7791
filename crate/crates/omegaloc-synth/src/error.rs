use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error(transparent)]
    Core(#[from] omegaloc_core::Error),
    #[error("`{0}` has {1} Rabin pairs; only single-pair conditions are supported")]
    MultiPair(String, usize),
    #[error("`{0}` must be a {1} automaton")]
    WrongKind(String, &'static str),
}

pub type Result<T> = std::result::Result<T, SynthError>;
