//! Reading and writing automata, JSON and DOT files.

use std::fs;
use std::path::Path;

use serde::Serialize;

use omegaloc_core::dot::to_dot;
use omegaloc_core::format::{parse, to_text};
use omegaloc_core::Automaton;

use crate::error::{CliError, Result};

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn load(path: &Path) -> Result<Automaton> {
    parse(&read_text(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

pub fn load_all(paths: &[impl AsRef<Path>]) -> Result<Vec<Automaton>> {
    paths.iter().map(|p| load(p.as_ref())).collect()
}

pub fn save(path: &Path, a: &Automaton) -> Result<()> {
    write_text(path, &to_text(a))
}

/// `<dir>/<stem>.dot`, when a DOT directory was requested.
pub fn save_dot(dir: Option<&Path>, stem: &str, a: &Automaton) -> Result<()> {
    match dir {
        Some(d) => write_text(&d.join(format!("{stem}.dot")), &to_dot(a)),
        None => Ok(()),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_text(path, &s)
}
