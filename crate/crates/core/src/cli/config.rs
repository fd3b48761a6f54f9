use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cayley::GroupSpec;
use crate::error::{Error, Result};
use crate::estimate::{digest_of, EventEntry, EventKind, EXHAUSTIVE_CAP};
use crate::events::SeedSchedule;

pub const SEED_VAR: &str = "POLYPERC_SEED";
pub const WORKERS_VAR: &str = "POLYPERC_WORKERS";

fn default_chi() -> f64 {
    SeedSchedule::default().chi
}

fn default_vertex_cap() -> usize {
    2_000_000
}

fn default_exhaustive_cap() -> u32 {
    EXHAUSTIVE_CAP
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    #[serde(default = "default_chi")]
    pub chi: f64,
    /// Coarse-connectedness radius used by the cutset checks.
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default = "default_vertex_cap")]
    pub vertex_cap: usize,
    #[serde(default = "default_exhaustive_cap")]
    pub exhaustive_cap: u32,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            chi: default_chi(),
            r: None,
            vertex_cap: default_vertex_cap(),
            exhaustive_cap: default_exhaustive_cap(),
        }
    }
}

fn default_csv() -> PathBuf {
    "results.csv".into()
}

fn default_manifest() -> PathBuf {
    "manifest.json".into()
}

/// Output file names, relative to the output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "default_csv")]
    pub csv: PathBuf,
    #[serde(default = "default_manifest")]
    pub manifest: PathBuf,
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { csv: default_csv(), manifest: default_manifest() }
    }
}

/// One experiment: an event estimated over a `p` grid times an `n` grid.
///
/// See `schema/experiment.schema.json` for the file format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupSpec,
    #[serde(rename = "W")]
    pub w: u32,
    pub event: EventEntry,
    pub p_grid: Vec<f64>,
    pub n_grid: Vec<u32>,
    pub seed: u64,
    pub replicas: u64,
    #[serde(default)]
    pub output: Outputs,
    #[serde(default)]
    pub schedule: Schedule,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("cannot parse experiment config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Parses the event and checks grids and every margin rule.
    pub fn validate(&self) -> Result<EventKind> {
        let kind = EventKind::parse(&self.event)?;
        if self.p_grid.is_empty() || self.n_grid.is_empty() {
            return Err(Error::Config("p_grid and n_grid must be non-empty".into()));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Config(format!("p values must lie in [0, 1], got {p}")));
        }
        if self.replicas == 0 {
            return Err(Error::Config("replicas must be at least 1".into()));
        }
        SeedSchedule::new(self.schedule.chi).map_err(|e| Error::Config(e.to_string()))?;
        for &n in &self.n_grid {
            kind.validate(n, self.w)?;
        }
        Ok(kind)
    }

    /// Hex SHA-256 of the canonical JSON of everything except output names.
    pub fn digest(&self) -> Result<String> {
        let mut content = serde_json::to_value(self)?;
        if let Some(map) = content.as_object_mut() {
            map.remove("output");
        }
        digest_of(&content)
    }
}

/// Values from flags and environment that override the config.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl Overrides {
    /// Fills unset seed and worker count from the environment.
    pub fn with_env(mut self) -> Result<Self> {
        fn var<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
            match std::env::var(name) {
                Ok(v) => {
                    v.trim().parse().map(Some).map_err(|_| Error::Config(format!("{name} is not a valid number: {v}")))
                }
                Err(_) => Ok(None),
            }
        }
        if self.seed.is_none() {
            self.seed = var(SEED_VAR)?;
        }
        if self.workers.is_none() {
            self.workers = var(WORKERS_VAR)?;
        }
        Ok(self)
    }

    pub fn workers(&self) -> usize {
        self.workers.unwrap_or(1).max(1)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}

/// Names accepted by `--group`: `z<d>`, `heisenberg`, or a JSON group spec.
pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let t = text.trim();
    if t == "heisenberg" {
        return Ok(GroupSpec::Heisenberg);
    }
    if let Some(d) = t.strip_prefix('z').and_then(|d| d.parse::<usize>().ok()) {
        return Ok(GroupSpec::hypercubic(d));
    }
    serde_json::from_str(t).map_err(|e| Error::Config(format!("unknown group `{t}`: {e}")))
}
