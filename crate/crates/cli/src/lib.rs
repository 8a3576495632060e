//! Config-driven batch runner for the `gifpsi` library.
//!
//! A run reads one JSON config, executes its tasks and writes a JSON report
//! with two members: `payload`, which is byte-reproducible for a fixed
//! config, and `timing`, which is not.

// Negated comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod run;

use std::path::{Path, PathBuf};

pub use config::{ConfigError, Overrides, RunConfig, TaskKind};
pub use run::{run, RunReport, TaskOutcome, TaskStatus};

/// Exit code for malformed input.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Read { .. } => EXIT_CONFIG,
            CliError::Write { .. } => 1,
        }
    }
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(RunConfig::from_json_with(&text, overrides)?)
}
