use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("nondeterministic transition from state `{state}` on `{event}`")]
    Nondeterministic { state: String, event: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
