//! Experiment harness for `roughscat-core`: TOML configuration, the binary
//! near-field matrix format, CSV and graymap outputs, run records and the
//! stages behind the `roughscat` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};

pub mod config;
pub mod matrix_file;
pub mod output;
pub mod pipeline;
pub mod record;

pub use config::ExperimentConfig;
pub use record::RunRecord;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "ROUGHSCAT_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] roughscat_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("configuration: {0}")]
    Config(String),
    #[error("matrix file: {0}")]
    Format(String),
    #[error("matrix metadata does not match the configuration: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

/// Sizes the global rayon pool from [`THREADS_ENV`] if set. Returns the
/// requested count.
pub fn init_threads() -> Result<Option<usize>> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| HarnessError::Config(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    Ok(Some(n))
}
