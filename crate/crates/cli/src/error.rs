//! Error category to process exit code mapping.

use std::fmt;

/// Exit codes: 0 success, 2 usage/config, 3 numeric failure, 4 I/O.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<photonfluid::solver::SolverError> for CliError {
    fn from(e: photonfluid::solver::SolverError) -> Self {
        use photonfluid::solver::SolverError;
        match e {
            SolverError::NonFinite { .. } => CliError::Numeric(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<photonfluid::solver::snapshot::SnapshotError> for CliError {
    fn from(e: photonfluid::solver::snapshot::SnapshotError) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<photonfluid::vapor::VaporError> for CliError {
    fn from(e: photonfluid::vapor::VaporError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<photonfluid::dispersion::DispersionError> for CliError {
    fn from(e: photonfluid::dispersion::DispersionError) -> Self {
        CliError::Usage(e.to_string())
    }
}
