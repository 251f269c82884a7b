//! Command-line driver: configuration, the five commands and report
//! rendering.

pub mod commands;
pub mod config;
pub mod render;
pub mod report;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::run;
pub use config::{Command, Format, QRange, RunConfig};
pub use report::{Record, Report, Verdict, SCHEMA_VERSION};

/// Errors that stop a run before a report exists. All map to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("{}: expected schema {SCHEMA_VERSION}, found {}", path.display(), found.map_or("none".to_string(), |v| v.to_string()))]
    Schema { path: PathBuf, found: Option<u64> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
