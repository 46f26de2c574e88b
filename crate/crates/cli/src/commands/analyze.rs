//! `analyze`: post-processing of a stored run. Rebuilds per-mode density
//! histories from the snapshots, fits growth rates against the analytic
//! prediction, counts vortices and integrates far-field sideband power.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use photonfluid::diagnostics::{
    density_mode, detect_vortices, far_field, fit_growth_rate, GrowthWindow, ModeHistory,
};
use photonfluid::dispersion::{growth_rate, ModeQuery};
use photonfluid::solver::snapshot::read_index;
use photonfluid::solver::FieldState;

use crate::commands::simulate::INDEX_FILE;
use crate::config::Config;
use crate::error::CliError;
use crate::manifest::RunManifest;

pub fn run(config: &Config, digest: &str, run_dir: &Path, out: &Path) -> Result<(), CliError> {
    let manifest = RunManifest::read(run_dir)?;
    let sim = &manifest.config.simulate;
    let cfg = &config.analyze;
    let index = read_index(&run_dir.join(INDEX_FILE))?;
    if index.is_empty() {
        return Err(CliError::usage(format!(
            "{}: snapshot index is empty",
            run_dir.display()
        )));
    }
    let missing: Vec<&str> = index
        .iter()
        .filter(|(file, _)| !run_dir.join(file).exists())
        .map(|(file, _)| file.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(CliError::Io(format!(
            "{}: missing snapshots: {}",
            run_dir.display(),
            missing.join(", ")
        )));
    }
    std::fs::create_dir_all(out)?;

    // Group the index by z: one snapshot may span several envelope files.
    let mut by_z: BTreeMap<u64, (f64, Vec<String>)> = BTreeMap::new();
    for (file, z) in &index {
        by_z
            .entry(z.to_bits())
            .or_insert_with(|| (*z, Vec::new()))
            .1
            .push(file.clone());
    }
    let mut snapshots: Vec<(f64, Vec<String>)> = by_z.into_values().collect();
    snapshots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let envelopes = snapshots[0].1.len() as f64;
    let background = sim.rho0 * envelopes;
    let mut histories: Vec<ModeHistory> = cfg
        .modes
        .iter()
        .map(|&m| {
            let q = 2.0 * std::f64::consts::PI * m as f64 / sim.lx;
            ModeHistory::new([q, 0.0], background)
        })
        .collect();

    let mut vortex_csv = String::new();
    writeln!(vortex_csv, "# config_digest: {digest}").unwrap();
    writeln!(vortex_csv, "z,envelope,vortices,net_charge").unwrap();
    let mut farfield_csv = String::new();
    writeln!(farfield_csv, "# config_digest: {digest}").unwrap();
    writeln!(farfield_csv, "z,band_power").unwrap();

    for (z, files) in &snapshots {
        let fields: Vec<FieldState> = files
            .iter()
            .map(|f| photonfluid::solver::snapshot::read_pfld(&run_dir.join(f)))
            .collect::<Result<_, _>>()?;
        let grid = fields[0].grid;
        let mut rho = vec![0.0; grid.cells()];
        for field in &fields {
            for (r, p) in rho.iter_mut().zip(&field.psi) {
                *r += p.norm_sqr();
            }
        }
        for (history, &mode) in histories.iter_mut().zip(&cfg.modes) {
            let amp = density_mode(&rho, &grid, (mode, 0));
            history
                .push(*z, amp)
                .map_err(|e| CliError::usage(e.to_string()))?;
        }
        if cfg.vortices {
            for (e, field) in fields.iter().enumerate() {
                let records = detect_vortices(field, None);
                let net: i32 = records.iter().map(|r| r.charge).sum();
                writeln!(vortex_csv, "{z},{e},{},{net}", records.len()).unwrap();
            }
        }
        let band: f64 = fields
            .iter()
            .map(|f| far_field(f).band_power(cfg.band_lo, cfg.band_hi))
            .sum();
        writeln!(farfield_csv, "{z},{band}").unwrap();
    }

    // Growth table with the analytic comparison column. The theory works in
    // units xi = 1/cs; a physical rate converts by cs^2.
    let cs = (2.0 * sim.g * sim.rho0).sqrt();
    let mut growth_csv = String::new();
    writeln!(growth_csv, "# config_digest: {digest}").unwrap();
    writeln!(
        growth_csv,
        "mode,q,gamma,uncertainty,gamma_theory,window,samples"
    )
    .unwrap();
    let window = GrowthWindow {
        amp_lo: cfg.window_lo,
        amp_hi: cfg.window_hi,
    };
    for (history, &mode) in histories.iter().zip(&cfg.modes) {
        let q = history.q[0];
        let theory = if cs > 0.0 {
            let query = ModeQuery::new(q / cs, sim.v0 / cs)?;
            growth_rate(&query) * cs * cs
        } else {
            0.0
        };
        // Fall back to the full history when the linear window is never
        // entered (stable or saturated runs).
        let (fit, label) = match fit_growth_rate(history, window) {
            Ok(fit) => (fit, "linear"),
            Err(_) => {
                let wide = GrowthWindow {
                    amp_lo: 0.0,
                    amp_hi: f64::INFINITY,
                };
                (
                    fit_growth_rate(history, wide)
                        .map_err(|e| CliError::usage(e.to_string()))?,
                    "full",
                )
            }
        };
        writeln!(
            growth_csv,
            "{mode},{q},{},{},{theory},{label},{}",
            fit.gamma, fit.uncertainty, fit.samples_used
        )
        .unwrap();
    }

    std::fs::write(out.join("growth.csv"), growth_csv)?;
    if cfg.vortices {
        std::fs::write(out.join("vortices.csv"), vortex_csv)?;
    }
    std::fs::write(out.join("farfield.csv"), farfield_csv)?;
    Ok(())
}
