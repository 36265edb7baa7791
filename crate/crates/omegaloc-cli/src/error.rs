use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: omegaloc_core::Error },
    #[error("{path}: {msg}")]
    Config { path: String, msg: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("no liveness supervisor exists; lasso of inf F(A) outside sup C(E_l): {0}")]
    NoSupervisor(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] omegaloc_core::Error),
    #[error(transparent)]
    Synth(#[from] omegaloc_synth::SynthError),
    #[error(transparent)]
    Local(#[from] omegaloc_local::LocalError),
    #[error(transparent)]
    Verify(#[from] omegaloc_verify::VerifyError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Config { .. } => 2,
            CliError::NoSupervisor(_) => 3,
            CliError::Verification(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
