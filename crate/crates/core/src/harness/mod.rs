//! Configuration files, r-table persistence, trace export and the bundled
//! verification suites.

mod config;
mod suites;
mod trace;

pub use config::{load_roster, ConfigDocument};
pub use suites::{enumeration_bound, run_suite, Check, SuiteBounds, SuiteReport, SUITE_NAMES};
pub use trace::{export_trace, export_trace_filtered, import_trace, load_cache, save_cache, TraceFormat};

use std::path::{Path, PathBuf};

use crate::engine::{EngineConfig, EngineError};
use crate::enumeration::EnumerationError;

/// Names a directory for r-table caches keyed by configuration fingerprint.
pub const CACHE_DIR_ENV: &str = "SPLITLAB_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config: {0}")]
    Config(String),
    #[error("trace line {line}: {msg}")]
    Trace { line: usize, msg: String },
    #[error("cache was written under configuration {found}, current configuration is {expected}")]
    FingerprintMismatch { expected: String, found: String },
    #[error("unknown suite `{0}` (known: {known})", known = SUITE_NAMES.join(", "))]
    UnknownSuite(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

impl HarnessError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.to_owned(), source }
    }
}

/// Cache file to use: the explicit path if given, else a file named after
/// the fingerprint inside `$SPLITLAB_CACHE_DIR`, else none.
pub fn cache_path(config: &EngineConfig, explicit: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_owned());
    }
    let dir = std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty())?;
    Some(PathBuf::from(dir).join(format!("{}.rtable", &config.fingerprint()[..16])))
}
