//! `simulate`: two-stream propagation run writing PFLD snapshots, a
//! snapshot index, a per-snapshot summary CSV and the run manifest. On a
//! mid-run numeric failure the partial outputs are kept and the manifest
//! records the failure coordinate.

use std::fmt::Write as _;
use std::path::Path;

use photonfluid::diagnostics::far_field;
use photonfluid::solver::snapshot::write_pfld;
use photonfluid::solver::{
    init_two_stream, propagate, seed_density_mode, Grid, RunSpec, SolverError, StreamModel,
    TwoStreamSystem,
};

use crate::config::{Config, SimulateConfig};
use crate::error::CliError;
use crate::manifest::{RunManifest, RunStatus};

pub const INDEX_FILE: &str = "index.csv";
pub const SUMMARY_FILE: &str = "summary.csv";

pub fn stream_model(name: &str) -> Result<StreamModel, CliError> {
    match name {
        "dual" => Ok(StreamModel::DualEnvelope),
        "single" => Ok(StreamModel::SingleField),
        other => Err(CliError::usage(format!(
            "simulate.model must be `dual` or `single`, got `{other}`"
        ))),
    }
}

pub fn build_grid(cfg: &SimulateConfig) -> Result<Grid, CliError> {
    Grid::new(cfg.nx, cfg.ny, cfg.lx, cfg.ly, cfg.dz).map_err(CliError::from)
}

pub fn build_spec(cfg: &SimulateConfig) -> Result<RunSpec, CliError> {
    Ok(RunSpec {
        g: cfg.g,
        potential: None,
        v0: cfg.v0,
        rho0: cfg.rho0,
        noise_amplitude: cfg.noise_amplitude,
        noise_seed: cfg.seed,
        z_end: cfg.z_end,
        snapshot_every: cfg.snapshot_every,
        model: stream_model(&cfg.model)?,
        dealias: cfg.dealias,
    })
}

pub fn run(config: &Config, digest: &str, out: &Path) -> Result<(), CliError> {
    let cfg = &config.simulate;
    let grid = build_grid(cfg)?;
    let spec = build_spec(cfg)?;
    spec.validate(&grid)?;
    // Keep the per-step nonlinear phase advance below one radian; the
    // reference step is the accuracy-oriented default.
    let rho_total = cfg.rho0 * if spec.model == StreamModel::DualEnvelope { 2.0 } else { 4.0 };
    if cfg.g * rho_total * cfg.dz > 1.0 {
        return Err(CliError::usage(format!(
            "dz = {} advances the nonlinear phase by more than 1 rad per step; \
             the accuracy default for this grid is {:.3e}",
            cfg.dz,
            Grid::default_dz(grid.dx(), cfg.g, rho_total)
        )));
    }

    std::fs::create_dir_all(out)?;
    let mut manifest = RunManifest::new(digest.to_string(), cfg.seed, config.clone());
    manifest.write(out)?;

    let mut system = init_two_stream(&grid, &spec)?;
    if cfg.seed_mode != 0 {
        for field in &mut system.fields {
            seed_density_mode(field, cfg.seed_mode, cfg.seed_mode_amplitude);
        }
    }
    let norm0: f64 = system.fields.iter().map(|f| f.norm()).sum();

    let mut index: Vec<(String, f64)> = Vec::new();
    let mut summary = String::new();
    writeln!(summary, "# config_digest: {digest}").unwrap();
    writeln!(summary, "z,norm_drift,band_power").unwrap();
    let mut counter = 0usize;
    let mut write_error: Option<CliError> = None;
    let result = propagate(&mut system, &spec, |s: &TwoStreamSystem| {
        if write_error.is_some() {
            return;
        }
        let z = s.z();
        for (e, field) in s.fields.iter().enumerate() {
            let name = format!("snap_{counter:05}_e{e}.pfld");
            if let Err(err) = write_pfld(&out.join(&name), field) {
                write_error = Some(err.into());
                return;
            }
            index.push((name, z));
        }
        let norm: f64 = s.fields.iter().map(|f| f.norm()).sum();
        // Sideband power in the analysis band (the DC carrier of each
        // envelope sits at q = 0 and is excluded by the open interval).
        let band: f64 = s
            .fields
            .iter()
            .map(|f| far_field(f).band_power(config.analyze.band_lo, config.analyze.band_hi))
            .sum();
        writeln!(summary, "{z},{},{band}", (norm - norm0) / norm0).unwrap();
        counter += 1;
    });

    photonfluid::solver::snapshot::write_index(&out.join(INDEX_FILE), &index)?;
    std::fs::write(out.join(SUMMARY_FILE), summary)?;
    manifest.output_paths = index.iter().map(|(f, _)| f.clone()).collect();
    manifest.output_paths.push(INDEX_FILE.into());
    manifest.output_paths.push(SUMMARY_FILE.into());

    match (result, write_error) {
        (Err(SolverError::NonFinite { z }), _) => {
            manifest.failure_z = Some(z);
            manifest.finish(RunStatus::Failed);
            manifest.write(out)?;
            Err(CliError::Numeric(format!("non-finite field values at z = {z}")))
        }
        (_, Some(err)) => {
            manifest.finish(RunStatus::Failed);
            manifest.write(out)?;
            Err(err)
        }
        (Err(other), None) => Err(other.into()),
        (Ok(_), None) => {
            manifest.finish(RunStatus::Complete);
            manifest.write(out)?;
            Ok(())
        }
    }
}
