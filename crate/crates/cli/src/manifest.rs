//! Run manifest: one JSON file per output directory recording the resolved
//! configuration, its digest, seed, tool version and output inventory.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::config::Config;
use crate::error::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    /// SHA-256 over the resolved configuration; identical parameters give
    /// identical digests regardless of when or where the run happened.
    pub config_digest: String,
    pub tool_version: String,
    pub seed: u64,
    pub output_paths: Vec<String>,
    pub created_utc: String,
    pub completed_utc: Option<String>,
    pub status: RunStatus,
    /// Propagation coordinate at which a numeric failure occurred, if any.
    pub failure_z: Option<f64>,
    /// The full resolved parameter set.
    pub config: Config,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Running,
    Complete,
    Failed,
}

impl RunManifest {
    pub fn new(digest: String, seed: u64, config: Config) -> Self {
        Self {
            config_digest: digest,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            output_paths: Vec::new(),
            created_utc: chrono::Utc::now().to_rfc3339(),
            completed_utc: None,
            status: RunStatus::Running,
            failure_z: None,
            config,
        }
    }

    pub fn finish(&mut self, status: RunStatus) {
        self.status = status;
        self.completed_utc = Some(chrono::Utc::now().to_rfc3339());
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Io(e.to_string()))?;
        std::fs::write(dir.join(MANIFEST_FILE), text)?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self, CliError> {
        let path = dir.join(MANIFEST_FILE);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}
