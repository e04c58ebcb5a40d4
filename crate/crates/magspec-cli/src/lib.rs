//! Experiment harness around the `magspec` library.
//!
//! Each subcommand builds a validated [`config::ExperimentConfig`], runs a
//! deterministic experiment, and produces a [`report::Report`] (one line per
//! asserted inequality or identity, with measured value and tolerance) plus
//! CSV data in one of two fixed schemas (see [`csvout`]).
//!
//! Exit-code contract of the binary:
//!
//! * `0` — every asserted check passed,
//! * `1` — at least one inequality or identity was violated beyond its
//!   tolerance,
//! * `2` — invalid input or configuration,
//! * `3` — a solver, root scan, or quadrature failed to converge.

pub mod commands;
pub mod config;
pub mod csvout;
pub mod report;

/// Harness-level error, classified for the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Bad input or configuration (exit code 2).
    Config(String),
    /// Numerical failure inside the library (exit code 3).
    Solver(magspec::Error),
    /// Filesystem problem reading or writing run artifacts (exit code 2).
    Io(std::io::Error),
}

impl CliError {
    /// Process exit code for this error per the harness contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Solver(e) => write!(f, "solver failure: {e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<magspec::Error> for CliError {
    fn from(e: magspec::Error) -> Self {
        if e.is_invalid_input() {
            CliError::Config(e.to_string())
        } else {
            CliError::Solver(e)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(format!("config JSON: {e}"))
    }
}

/// Result alias for harness code.
pub type CliResult<T> = std::result::Result<T, CliError>;
