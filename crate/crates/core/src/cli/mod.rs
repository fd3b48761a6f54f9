//! Command-line front end: `graph-info`, `run`, `verify` and `fit`.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 margin
//! violation, 4 resource cap, 5 verification failure.

mod config;
mod run;
mod verify;

pub use config::{parse_group, ExperimentConfig, Outputs, Overrides, Schedule, SEED_VAR, WORKERS_VAR};
pub use run::{
    alpha_from_growth, csv_bytes, fit_csv, read_csv, run_experiment, write_atomic, write_fit_report, AlphaProvenance,
    CsvRow, FitReport, GroupFit, Manifest, RunSummary, CSV_HEADER,
};
pub use verify::{verify, Check, VerifyOptions, VerifyReport, SUITES};

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cayley::{build_group, build_window_with_cap, growth_exponent_fit, GroupSpec};
use crate::error::{Error, Result};
use crate::estimate::DecayModel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_MARGIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Margin(_) => EXIT_MARGIN,
        Error::Resource(_) => EXIT_RESOURCE,
        _ => EXIT_CONFIG,
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyperc", version, about = "Percolation experiments on Cayley graphs of polynomial growth")]
pub struct Cli {
    /// Experiment config (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the config seed (also POLYPERC_SEED).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (also POLYPERC_WORKERS); default 1.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Directory for all outputs; default the current directory.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ball sizes and growth exponent of a group.
    GraphInfo {
        /// `z<d>`, `heisenberg`, or a JSON group spec; defaults to the config's group.
        #[arg(long)]
        group: Option<String>,
        /// Window radius; defaults to the config's W.
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Estimate the configured event over its grid.
    Run,
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = SUITES)]
        suite: String,
        /// Random configurations per check.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Coarse-connectedness radius for cutset checks; defaults to the config's R,
        /// else a per-group value.
        #[arg(long)]
        r_coarse: Option<u32>,
    },
    /// Fit a decay model to a results CSV.
    Fit {
        csv: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelArg::Exp)]
        model: ModelArg,
        /// Stretched exponent; if absent it is derived from the growth of
        /// `--group` (or the config's group).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        group: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Exp,
    Stretched,
    Power,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub group: GroupSpec,
    #[serde(rename = "W")]
    pub w: u32,
    pub degree: usize,
    pub vertices: usize,
    pub edges: usize,
    pub ball_sizes: Vec<usize>,
    pub d_hat: Option<f64>,
}

pub fn graph_info(spec: &GroupSpec, w: u32, vertex_cap: usize) -> Result<GraphInfo> {
    let group = build_group(spec)?;
    let window = build_window_with_cap(&group, w, vertex_cap)?;
    let d_hat = if w >= 4 { Some(growth_exponent_fit(&group, w)?.d_hat) } else { None };
    Ok(GraphInfo {
        group: spec.clone(),
        w,
        degree: window.degree(),
        vertices: window.vertex_count(),
        edges: window.edge_count(),
        ball_sizes: (0..=w).map(|r| window.ball_size(r)).collect(),
        d_hat,
    })
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn load(cli: &Cli) -> Result<Option<ExperimentConfig>> {
    cli.config.as_deref().map(ExperimentConfig::load).transpose()
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    let overrides = Overrides { seed: cli.seed, workers: cli.workers, out_dir: cli.out_dir.clone() }.with_env()?;
    let config = load(&cli)?;
    match &cli.command {
        Command::GraphInfo { group, radius } => {
            let spec = match (group, &config) {
                (Some(g), _) => parse_group(g)?,
                (None, Some(c)) => c.group.clone(),
                (None, None) => return Err(Error::Config("graph-info needs --group or --config".into())),
            };
            let w = radius
                .or(config.as_ref().map(|c| c.w))
                .ok_or_else(|| Error::Config("graph-info needs --radius or --config".into()))?;
            let cap = config.as_ref().map_or(Schedule::default().vertex_cap, |c| c.schedule.vertex_cap);
            print_json(&graph_info(&spec, w, cap)?)?;
        }
        Command::Run => {
            let config = config.ok_or_else(|| Error::Config("run needs --config".into()))?;
            let summary = run_experiment(&config, &overrides)?;
            eprintln!(
                "wrote {} rows to {} (digest {})",
                summary.rows.len(),
                summary.csv_path.display(),
                summary.config_digest
            );
        }
        Command::Verify { suite, samples, r_coarse } => {
            let opts = VerifyOptions {
                seed: overrides.seed.or(config.as_ref().map(|c| c.seed)).unwrap_or(1),
                samples: *samples,
                r_coarse: r_coarse.or(config.as_ref().and_then(|c| c.schedule.r)),
            };
            let report = estimate_pool(&overrides, || verify(suite, opts))??;
            let path = overrides.out_dir().join(format!("verify_{suite}.json"));
            write_atomic(&path, &serde_json::to_vec_pretty(&report)?)?;
            for c in &report.checks {
                eprintln!("{} {} {} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.instance, c.detail);
            }
            if !report.passed {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Fit { csv, model, alpha, group } => {
            let mut provenance = None;
            let model = match model {
                ModelArg::Exp => DecayModel::ExpInN,
                ModelArg::Power => DecayModel::PowerLaw,
                ModelArg::Stretched => {
                    let prov = match (alpha, group, &config) {
                        (Some(a), _, _) => AlphaProvenance::Explicit { alpha: *a },
                        (None, Some(g), _) => alpha_from_growth(&parse_group(g)?, 16)?,
                        (None, None, Some(c)) => alpha_from_growth(&c.group, 16)?,
                        (None, None, None) => {
                            return Err(Error::Config("stretched fits need --alpha, --group or --config".into()))
                        }
                    };
                    let alpha = prov.alpha();
                    provenance = Some(prov);
                    DecayModel::Stretched { alpha }
                }
            };
            let report = fit_csv(csv, model, provenance)?;
            let path = write_fit_report(&report, &overrides.out_dir())?;
            print_json(&report.fits.iter().map(|g| (&g.event, g.p, g.fit.slope, g.fit.r2)).collect::<Vec<_>>())?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(EXIT_OK)
}

fn estimate_pool<T: Send>(overrides: &Overrides, f: impl FnOnce() -> T + Send) -> Result<T> {
    crate::estimate::with_workers(overrides.workers(), f)
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
