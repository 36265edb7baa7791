use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::io::read_text;

/// A TOML pipeline description. Relative paths are taken relative to the
/// directory holding the config file.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub plant: Vec<PathBuf>,
    #[serde(default)]
    pub safety_specs: Vec<PathBuf>,
    pub legal: PathBuf,
    pub minimal: PathBuf,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default)]
    pub dot: bool,
    #[serde(default = "default_lassos")]
    pub lassos: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_lassos() -> usize {
    500
}

impl PipelineConfig {
    pub fn from_str(text: &str, origin: &Path) -> Result<Self> {
        let cfg: PipelineConfig = toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| text[..s.start].lines().count().max(1));
            let msg = match line {
                Some(l) => format!("line {l}: {}", e.message()),
                None => e.message().to_string(),
            };
            CliError::Config { path: origin.display().to_string(), msg }
        })?;
        if cfg.plant.is_empty() {
            return Err(CliError::Config {
                path: origin.display().to_string(),
                msg: "`plant` lists no components".into(),
            });
        }
        Ok(cfg)
    }

    /// Read `path` and resolve its file references.
    pub fn load(path: &Path) -> Result<Self> {
        let cfg = Self::from_str(&read_text(path)?, path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        Ok(cfg.relative_to(base))
    }

    pub fn relative_to(mut self, base: &Path) -> Self {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        self.plant.iter_mut().for_each(fix);
        self.safety_specs.iter_mut().for_each(fix);
        fix(&mut self.legal);
        fix(&mut self.minimal);
        fix(&mut self.out_dir);
        self
    }
}
