//! `stability-map`: growth-rate raster over the (Q, beta) plane, CSV plus
//! optional heatmap with the analytic band edges overlaid.

use image::Rgb;
use std::fmt::Write as _;
use std::path::Path;

use photonfluid::dispersion::stability_map;

use crate::config::Config;
use crate::error::CliError;
use crate::plot::{self, Panel};

pub fn run(config: &Config, digest: &str, out: &Path, plots: bool) -> Result<(), CliError> {
    let cfg = &config.stability;
    if cfg.beta_max <= 0.0 || cfg.q_max <= 0.0 || cfg.beta_samples < 2 || cfg.q_samples < 2 {
        return Err(CliError::usage(format!(
            "bad stability raster: beta_max = {}, q_max = {}, {}x{} samples",
            cfg.beta_max, cfg.q_max, cfg.beta_samples, cfg.q_samples
        )));
    }
    std::fs::create_dir_all(out)?;
    let betas: Vec<f64> = (0..cfg.beta_samples)
        .map(|i| cfg.beta_max * i as f64 / (cfg.beta_samples - 1) as f64)
        .collect();
    let qs: Vec<f64> = (0..cfg.q_samples)
        .map(|i| cfg.q_max * i as f64 / (cfg.q_samples - 1) as f64)
        .collect();
    let raster = stability_map(&betas, &qs);
    let mut csv = String::new();
    writeln!(csv, "# config_digest: {digest}").unwrap();
    writeln!(csv, "Q,beta,growth").unwrap();
    for row in &raster {
        for cell in row {
            writeln!(csv, "{},{},{}", cell.q, cell.beta, cell.growth).unwrap();
        }
    }
    std::fs::write(out.join("stability_map.csv"), csv)?;
    if plots {
        let panel = Panel {
            px: 40,
            py: 20,
            width: 720,
            height: 560,
            x_range: (0.0, cfg.q_max),
            y_range: (0.0, cfg.beta_max),
        };
        let mut img = plot::new_canvas(800, 600);
        // Row-major over beta rows, each q_samples wide.
        let values: Vec<f64> = raster
            .iter()
            .flat_map(|row| row.iter().map(|c| c.growth))
            .collect();
        let max = values.iter().cloned().fold(0.0, f64::max);
        plot::heatmap(&panel, &mut img, &values, cfg.q_samples, cfg.beta_samples, max);
        // Analytic band edges: Q = beta and Q = sqrt(beta^2 - 4).
        let blue = Rgb([0, 90, 181]);
        let upper: Vec<(f64, f64)> = betas.iter().map(|&b| (b, b)).collect();
        let lower: Vec<(f64, f64)> = betas
            .iter()
            .filter(|&&b| b >= 2.0)
            .map(|&b| ((b * b - 4.0).sqrt(), b))
            .collect();
        panel.polyline(&mut img, &upper, blue);
        panel.polyline(&mut img, &lower, blue);
        panel.frame(&mut img);
        plot::save(&img, &out.join("stability_map.png"))?;
    }
    Ok(())
}
