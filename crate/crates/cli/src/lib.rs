//! Library half of the `twobridge` command: report rendering, parameter
//! scans, the scatter plot and the self-test suite. `main.rs` only parses
//! arguments and maps errors to exit codes.

pub mod figure;
pub mod oracle;
pub mod report;
pub mod scan;
pub mod selfcheck;

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad `(p, q)` or bad option values.
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Computation(String),
    #[error("self-test failed")]
    SelfTestFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SelfTestFailed | CliError::Computation(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Output { .. } => 3,
        }
    }
}

impl From<twobridge::ParamError> for CliError {
    fn from(e: twobridge::ParamError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<twobridge::VolumeError> for CliError {
    fn from(e: twobridge::VolumeError) -> Self {
        match e {
            twobridge::VolumeError::Params(p) => p.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

/// Fixed 12 decimals, with `-0.000000000000` printed as `0.000000000000`.
pub fn fixed12(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Write `contents` to `path`, mapping failures to [`CliError::Output`].
pub fn write_output(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Output {
        path: path.to_path_buf(),
        source,
    })
}
