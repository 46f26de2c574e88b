//! `dispersion`: four-branch curves per Mach number, CSV plus optional
//! two-panel (Re / Im) plot with Bogoliubov and streaming-line references
//! and the unstable band shaded.

use image::Rgb;
use std::fmt::Write as _;
use std::path::Path;

use photonfluid::dispersion::{
    bogoliubov, growth_rate, two_stream_roots, unstable_band, ModeQuery, Sign,
};

use crate::config::Config;
use crate::error::CliError;
use crate::plot::{self, Panel};

const CURVE_COLORS: [Rgb<u8>; 4] = [
    Rgb([0, 90, 181]),
    Rgb([220, 50, 32]),
    Rgb([0, 140, 80]),
    Rgb([150, 80, 190]),
];

pub fn run(config: &Config, digest: &str, out: &Path, plots: bool) -> Result<(), CliError> {
    let cfg = &config.dispersion;
    if cfg.betas.is_empty() {
        return Err(CliError::usage("dispersion.betas must not be empty"));
    }
    if !(cfg.q_max > cfg.q_min) || cfg.q_min < 0.0 || cfg.samples < 2 {
        return Err(CliError::usage(format!(
            "bad Q range [{}, {}] with {} samples",
            cfg.q_min, cfg.q_max, cfg.samples
        )));
    }
    std::fs::create_dir_all(out)?;
    for &beta in &cfg.betas {
        let mut csv = String::new();
        writeln!(csv, "# config_digest: {digest}").unwrap();
        writeln!(
            csv,
            "Q,beta,re_root_1,re_root_2,re_root_3,re_root_4,\
             im_root_1,im_root_2,im_root_3,im_root_4,growth"
        )
        .unwrap();
        let mut rows = Vec::with_capacity(cfg.samples);
        for n in 0..cfg.samples {
            let q = cfg.q_min + (cfg.q_max - cfg.q_min) * n as f64 / (cfg.samples - 1) as f64;
            let query = ModeQuery::with_alignment(q, beta, cfg.alignment)?;
            let roots = two_stream_roots(&query).sorted();
            let growth = growth_rate(&query);
            write!(csv, "{q},{beta}").unwrap();
            for r in &roots {
                write!(csv, ",{}", r.re).unwrap();
            }
            for r in &roots {
                write!(csv, ",{}", r.im).unwrap();
            }
            writeln!(csv, ",{growth}").unwrap();
            rows.push((q, roots, growth));
        }
        let stem = format!("dispersion_beta_{beta}");
        std::fs::write(out.join(format!("{stem}.csv")), csv)?;
        if plots {
            render(&rows, beta, cfg.q_min, cfg.q_max, &out.join(format!("{stem}.png")))?;
        }
    }
    Ok(())
}

fn render(
    rows: &[(f64, [num_complex::Complex64; 4], f64)],
    beta: f64,
    q_min: f64,
    q_max: f64,
    path: &Path,
) -> Result<(), CliError> {
    let mut img = plot::new_canvas(900, 640);
    let re_max = rows
        .iter()
        .flat_map(|(_, r, _)| r.iter().map(|c| c.re.abs()))
        .fold(1.0_f64, f64::max);
    let im_max = rows
        .iter()
        .map(|(_, _, g)| *g)
        .fold(1e-3_f64, f64::max);
    let re_panel = Panel {
        px: 40,
        py: 20,
        width: 820,
        height: 280,
        x_range: (q_min, q_max),
        y_range: (-1.05 * re_max, 1.05 * re_max),
    };
    let im_panel = Panel {
        px: 40,
        py: 340,
        width: 820,
        height: 280,
        x_range: (q_min, q_max),
        y_range: (-1.15 * im_max, 1.15 * im_max),
    };
    let band = unstable_band(beta);
    for panel in [&re_panel, &im_panel] {
        if !band.is_empty() {
            panel.shade_span(
                &mut img,
                band.q_lo.max(q_min),
                band.q_hi.min(q_max),
                plot::BAND,
            );
        }
        panel.frame(&mut img);
    }
    // Reference curves: +-Bogoliubov and the streaming line W = beta Q / 2.
    let grey = Rgb([170, 170, 170]);
    for sign in [Sign::Plus, Sign::Minus] {
        let pts: Vec<(f64, f64)> = rows.iter().map(|(q, _, _)| (*q, bogoliubov(*q, sign))).collect();
        re_panel.polyline(&mut img, &pts, grey);
    }
    let stream: Vec<(f64, f64)> = rows.iter().map(|(q, _, _)| (*q, beta * q / 2.0)).collect();
    re_panel.polyline(&mut img, &stream, Rgb([120, 120, 220]));
    for k in 0..4 {
        let re_pts: Vec<(f64, f64)> = rows.iter().map(|(q, r, _)| (*q, r[k].re)).collect();
        let im_pts: Vec<(f64, f64)> = rows.iter().map(|(q, r, _)| (*q, r[k].im)).collect();
        re_panel.polyline(&mut img, &re_pts, CURVE_COLORS[k]);
        im_panel.polyline(&mut img, &im_pts, CURVE_COLORS[k]);
    }
    plot::save(&img, path)
}
