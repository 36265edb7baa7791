use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error(transparent)]
    Core(#[from] omegaloc_core::Error),
    #[error("event `{0}` is uncontrollable; only controllable events are localized")]
    Uncontrollable(String),
    #[error("profile covers {0} states but the supervisor has {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid congruence: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, LocalError>;
