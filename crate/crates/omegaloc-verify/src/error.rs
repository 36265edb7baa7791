use omegaloc_core::LassoWord;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Core(#[from] omegaloc_core::Error),
    #[error(transparent)]
    Synth(#[from] omegaloc_synth::SynthError),
    #[error(transparent)]
    Local(#[from] omegaloc_local::LocalError),
    #[error("brute force limited to {limit} states, got {got}")]
    TooLarge { got: usize, limit: usize },
    #[error("no liveness supervisor: the minimal behaviour is not contained in the supremal controllable one")]
    NoSupervisor(LassoWord),
}

pub type Result<T> = std::result::Result<T, VerifyError>;
