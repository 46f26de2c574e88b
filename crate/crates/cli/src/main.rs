//! `photonfluid`: dispersion scans, stability maps, two-stream simulations,
//! run analysis and vapor-cell calculations from one binary.

mod commands;
mod config;
mod error;
mod manifest;
mod plot;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use error::CliError;

#[derive(Parser)]
#[command(name = "photonfluid", version, about = "Two-stream instability laboratory for paraxial fluids of light")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Configuration file (TOML); defaults apply for anything omitted.
    #[arg(long, short = 'c')]
    config: Option<PathBuf>,
    /// Dotted-path override, e.g. --set simulate.z_end=40 (repeatable;
    /// takes precedence over the file).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Output directory.
    #[arg(long, short = 'o', default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Four-branch dispersion curves per Mach number (CSV, optional plots).
    Dispersion {
        #[command(flatten)]
        common: Common,
        /// Also render PNG panels.
        #[arg(long)]
        plot: bool,
    },
    /// Growth-rate raster over the (Q, beta) plane.
    StabilityMap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        plot: bool,
    },
    /// Propagate a two-stream run and store snapshots plus manifest.
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Fit growth rates, census vortices and stack far fields of a run.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Directory holding the manifest and snapshots.
        run_dir: PathBuf,
    },
    /// Vapor-cell feasibility report and detuning scan.
    Vapor {
        #[command(flatten)]
        common: Common,
    },
}

fn init_threads() {
    if let Ok(value) = std::env::var("PHOTONFLUID_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    init_threads();
    let (common, runner): (&Common, Box<dyn FnOnce(&config::Config, &str) -> Result<(), CliError>>) =
        match &cli.command {
            Command::Dispersion { common, plot } => {
                let (out, plot) = (common.out.clone(), *plot);
                (common, Box::new(move |cfg, digest| {
                    commands::dispersion::run(cfg, digest, &out, plot)
                }))
            }
            Command::StabilityMap { common, plot } => {
                let (out, plot) = (common.out.clone(), *plot);
                (common, Box::new(move |cfg, digest| {
                    commands::stability::run(cfg, digest, &out, plot)
                }))
            }
            Command::Simulate { common } => {
                let out = common.out.clone();
                (common, Box::new(move |cfg, digest| {
                    commands::simulate::run(cfg, digest, &out)
                }))
            }
            Command::Analyze { common, run_dir } => {
                let (out, run_dir) = (common.out.clone(), run_dir.clone());
                (common, Box::new(move |cfg, digest| {
                    commands::analyze::run(cfg, digest, &run_dir, &out)
                }))
            }
            Command::Vapor { common } => {
                let out = common.out.clone();
                (common, Box::new(move |cfg, digest| {
                    commands::vapor::run(cfg, digest, &out)
                }))
            }
        };
    let resolved = config::resolve(common.config.as_deref(), &common.overrides)?;
    let digest = config::digest(&resolved);
    runner(&resolved, &digest)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
