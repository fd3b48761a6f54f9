use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Overrides};
use crate::cayley::{build_group, build_window_with_cap, growth_exponent_fit, GroupSpec};
use crate::error::{Error, Result};
use crate::estimate::{estimate_event, fit_decay, with_workers, DecayModel, Estimate, FitResult};

pub const CSV_HEADER: [&str; 10] = ["event", "p", "n", "W", "m_aux", "n_samples", "p_hat", "ci_low", "ci_high", "seed"];

/// One row of the results CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub event: String,
    pub p: f64,
    pub n: u32,
    #[serde(rename = "W")]
    pub w: u32,
    pub m_aux: Option<u32>,
    pub n_samples: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl CsvRow {
    fn estimate(&self) -> Estimate {
        Estimate {
            p_hat: self.p_hat,
            n_samples: self.n_samples,
            successes: (self.p_hat * self.n_samples as f64).round() as u64,
            ci_low: self.ci_low,
            ci_high: self.ci_high,
            seed: self.seed,
            config_digest: String::new(),
        }
    }
}

pub fn csv_bytes(rows: &[CsvRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!(
            "{} does not match the results schema {}; found header {:?}",
            path.display(),
            CSV_HEADER.join(","),
            header
        )));
    }
    r.deserialize()
        .collect::<std::result::Result<Vec<CsvRow>, _>>()
        .map_err(|e| Error::Config(format!("{}: schema mismatch: {e}", path.display())))
}

/// Writes `bytes` to a temporary file next to `path`, then renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord {
    pub path: PathBuf,
    pub sha256: String,
}

/// Everything needed to reproduce a run.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub config_digest: String,
    /// The config with overrides applied.
    pub config: ExperimentConfig,
    pub package: &'static str,
    pub version: &'static str,
    pub label_scheme: &'static str,
    pub workers: usize,
    pub wall_time_s: f64,
    pub outputs: Vec<OutputRecord>,
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub rows: Vec<CsvRow>,
    pub csv_path: PathBuf,
    pub manifest_path: PathBuf,
    pub config_digest: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Estimates every `(p, n)` cell and writes the CSV and the manifest.
pub fn run_experiment(config: &ExperimentConfig, overrides: &Overrides) -> Result<RunSummary> {
    let started = Instant::now();
    let mut config = config.clone();
    if let Some(seed) = overrides.seed {
        config.seed = seed;
    }
    let kind = config.validate()?;
    let digest = config.digest()?;
    let group = build_group(&config.group)?;
    let window = build_window_with_cap(&group, config.w, config.schedule.vertex_cap)?;
    let workers = overrides.workers();
    let rows = with_workers(workers, || -> Result<Vec<CsvRow>> {
        let mut rows = Vec::new();
        for &p in &config.p_grid {
            for &n in &config.n_grid {
                let est = estimate_event(&window, &kind, n, p, config.seed, config.replicas)?;
                rows.push(CsvRow {
                    event: kind.name().to_string(),
                    p,
                    n,
                    w: config.w,
                    m_aux: kind.m_aux(),
                    n_samples: est.n_samples,
                    p_hat: est.p_hat,
                    ci_low: est.ci_low,
                    ci_high: est.ci_high,
                    seed: config.seed,
                });
            }
        }
        Ok(rows)
    })??;

    let out_dir = overrides.out_dir();
    let csv_path = out_dir.join(&config.output.csv);
    let body = csv_bytes(&rows)?;
    write_atomic(&csv_path, &body)?;
    let manifest = Manifest {
        config_digest: digest.clone(),
        config: config.clone(),
        package: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        label_scheme: "polyperc/edge/v1",
        workers,
        wall_time_s: started.elapsed().as_secs_f64(),
        outputs: vec![OutputRecord { path: config.output.csv.clone(), sha256: sha256_hex(&body) }],
    };
    let manifest_path = out_dir.join(&config.output.manifest);
    write_atomic(&manifest_path, &serde_json::to_vec_pretty(&manifest)?)?;
    Ok(RunSummary { rows, csv_path, manifest_path, config_digest: digest })
}

/// Where the stretched exponent came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum AlphaProvenance {
    Explicit {
        alpha: f64,
    },
    /// `α = (d - 1)/d` with `d` the rounded growth-fit slope.
    GrowthExponentFit {
        alpha: f64,
        group: GroupSpec,
        n_max: u32,
        d_hat: f64,
        d: u32,
    },
}

impl AlphaProvenance {
    pub fn alpha(&self) -> f64 {
        match *self {
            AlphaProvenance::Explicit { alpha } | AlphaProvenance::GrowthExponentFit { alpha, .. } => alpha,
        }
    }
}

pub fn alpha_from_growth(group: &GroupSpec, n_max: u32) -> Result<AlphaProvenance> {
    let fit = growth_exponent_fit(&build_group(group)?, n_max)?;
    let d = fit.d_hat.round().max(1.0) as u32;
    Ok(AlphaProvenance::GrowthExponentFit {
        alpha: (d as f64 - 1.0) / d as f64,
        group: group.clone(),
        n_max,
        d_hat: fit.d_hat,
        d,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupFit {
    pub event: String,
    pub p: f64,
    pub m_aux: Option<u32>,
    pub data_file: PathBuf,
    pub fit: FitResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub csv: PathBuf,
    pub model: DecayModel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_provenance: Option<AlphaProvenance>,
    pub fits: Vec<GroupFit>,
}

type SeriesKey = (String, f64, Option<u32>);

/// Fits every `(event, p, m_aux)` series of a results CSV.
pub fn fit_csv(path: &Path, model: DecayModel, alpha: Option<AlphaProvenance>) -> Result<FitReport> {
    let rows = read_csv(path)?;
    let mut series: Vec<(SeriesKey, Vec<(f64, Estimate)>)> = Vec::new();
    for row in &rows {
        let key = (row.event.clone(), row.p, row.m_aux);
        match series.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push((f64::from(row.n), row.estimate())),
            None => series.push((key, vec![(f64::from(row.n), row.estimate())])),
        }
    }
    if series.is_empty() {
        return Err(Error::InsufficientPoints { needed: 4, got: 0 });
    }
    let fits = series
        .into_iter()
        .enumerate()
        .map(|(i, ((event, p, m_aux), table))| {
            let fit = fit_decay(&table, model)?;
            Ok(GroupFit { data_file: format!("fit_{i}_{event}.dat").into(), event, p, m_aux, fit })
        })
        .collect::<Result<_>>()?;
    Ok(FitReport { csv: path.to_path_buf(), model, alpha_provenance: alpha, fits })
}

/// Writes `fit.json` and one two-column data file per series into `out_dir`.
pub fn write_fit_report(report: &FitReport, out_dir: &Path) -> Result<PathBuf> {
    for g in &report.fits {
        write_atomic(&out_dir.join(&g.data_file), g.fit.plot_data().as_bytes())?;
    }
    let path = out_dir.join("fit.json");
    write_atomic(&path, &serde_json::to_vec_pretty(report)?)?;
    Ok(path)
}
