//! Driver for the synthesis → localization → verification pipeline, used
//! by the `omegaloc` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod summary;

pub use config::PipelineConfig;
pub use error::{CliError, Result};
pub use pipeline::{run_pipeline, PipelineReport, RunOptions};
pub use summary::{disablements, Summary};
