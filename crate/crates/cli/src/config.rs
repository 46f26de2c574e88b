//! Layered configuration: built-in defaults, an optional TOML file, and
//! dotted-path `--set section.key=value` overrides, in increasing
//! precedence. The fully resolved set is hashed (SHA-256) into the run
//! digest and echoed into every manifest.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub dispersion: DispersionConfig,
    pub stability: StabilityConfig,
    pub simulate: SimulateConfig,
    pub analyze: AnalyzeConfig,
    pub vapor: VaporConfig,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            dispersion: DispersionConfig::default(),
            stability: StabilityConfig::default(),
            simulate: SimulateConfig::default(),
            analyze: AnalyzeConfig::default(),
            vapor: VaporConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DispersionConfig {
    /// Mach numbers, one curve set per entry.
    pub betas: Vec<f64>,
    pub q_min: f64,
    pub q_max: f64,
    pub samples: usize,
    /// Cosine of the angle between flow and wavevector.
    pub alignment: f64,
}

impl Default for DispersionConfig {
    fn default() -> Self {
        Self {
            betas: vec![1.0, 2.0, 3.0],
            q_min: 0.0,
            q_max: 3.0,
            samples: 600,
            alignment: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StabilityConfig {
    pub beta_max: f64,
    pub q_max: f64,
    pub beta_samples: usize,
    pub q_samples: usize,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        Self {
            beta_max: 4.0,
            q_max: 4.0,
            beta_samples: 400,
            q_samples: 400,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub dz: f64,
    pub g: f64,
    pub rho0: f64,
    pub v0: f64,
    pub z_end: f64,
    pub snapshot_every: usize,
    pub noise_amplitude: f64,
    pub seed: u64,
    /// "dual" (two coupled envelopes) or "single" (one superposed field).
    pub model: String,
    pub dealias: bool,
    /// Transverse lattice mode seeded on top of the noise; 0 disables.
    pub seed_mode: i64,
    pub seed_mode_amplitude: f64,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        // A quick unstable reference run: cs = sqrt(2 g rho0) = 1, beta = 1,
        // seeded mode 2 of lx = 8 pi, i.e. q xi = 0.5 (inside the band).
        Self {
            nx: 128,
            ny: 32,
            lx: 8.0 * std::f64::consts::PI,
            ly: 2.0 * std::f64::consts::PI,
            dz: 0.05,
            g: 0.5,
            rho0: 1.0,
            v0: 1.0,
            z_end: 20.0,
            snapshot_every: 4,
            noise_amplitude: 1e-8,
            seed: 42,
            model: "dual".into(),
            dealias: false,
            seed_mode: 2,
            seed_mode_amplitude: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyzeConfig {
    /// Transverse lattice modes whose growth is fitted.
    pub modes: Vec<i64>,
    pub window_lo: f64,
    pub window_hi: f64,
    /// Census vortices on every snapshot.
    pub vortices: bool,
    /// Sideband power integrated over this |q| range, per snapshot.
    pub band_lo: f64,
    pub band_hi: f64,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        Self {
            modes: vec![2],
            window_lo: 1e-5,
            window_hi: 1e-2,
            vortices: true,
            band_lo: 1e-6,
            band_hi: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VaporConfig {
    /// Atomic density, cm^-3.
    pub atomic_density: f64,
    /// Detuning, MHz (ordinary frequency, signed).
    pub detuning_mhz: f64,
    /// Drive intensity, W/cm^2.
    pub intensity: f64,
    /// Detuning scan range, MHz.
    pub scan_detunings_mhz: Vec<f64>,
    /// Densities for the scan, cm^-3.
    pub scan_densities: Vec<f64>,
}

impl Default for VaporConfig {
    fn default() -> Self {
        Self {
            atomic_density: 1e12,
            detuning_mhz: -120.0,
            intensity: 0.4,
            scan_detunings_mhz: (1..=40).map(|i| -6.06 * i as f64).collect(),
            scan_densities: vec![1e11, 1e12, 1e13],
        }
    }
}

/// Loads the file (when given), applies dotted overrides and deserializes.
pub fn resolve(file: Option<&Path>, overrides: &[String]) -> Result<Config, CliError> {
    let mut table = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            text.parse::<toml::Table>()
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
        }
        None => toml::Table::new(),
    };
    for item in overrides {
        apply_override(&mut table, item)?;
    }
    let defaults = toml::Table::try_from(Config::default())
        .expect("defaults serialize");
    merge(&mut table, defaults);
    table
        .try_into()
        .map_err(|e| CliError::usage(format!("invalid configuration: {e}")))
}

/// Fills in missing keys from `defaults` without touching present ones.
fn merge(table: &mut toml::Table, defaults: toml::Table) {
    for (key, value) in defaults {
        match table.get_mut(&key) {
            None => {
                table.insert(key, value);
            }
            Some(toml::Value::Table(sub)) => {
                if let toml::Value::Table(def_sub) = value {
                    merge(sub, def_sub);
                }
            }
            Some(_) => {}
        }
    }
}

fn apply_override(table: &mut toml::Table, item: &str) -> Result<(), CliError> {
    let (path, raw) = item
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("--set expects key.path=value, got `{item}`")))?;
    let value: toml::Value = format!("v = {raw}")
        .parse::<toml::Table>()
        .map(|mut t| t.remove("v").unwrap())
        .unwrap_or_else(|_| toml::Value::String(raw.trim().to_string()));
    let segments: Vec<&str> = path.trim().split('.').collect();
    if segments.iter().any(|s| s.is_empty()) {
        return Err(CliError::usage(format!("bad override path `{path}`")));
    }
    let mut current = table;
    for segment in &segments[..segments.len() - 1] {
        current = current
            .entry(segment.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| CliError::usage(format!("`{segment}` in `{path}` is not a table")))?;
    }
    current.insert(segments.last().unwrap().to_string(), value);
    Ok(())
}

/// SHA-256 of the canonical serialization of the resolved configuration.
/// Depends on parameter values only, never on timestamps or paths.
pub fn digest(config: &Config) -> String {
    let canonical = toml::to_string(config).expect("config serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("{:x}", hasher.finalize())
}
