//! Monte Carlo estimation over replicas of the label field.
//!
//! Replica `r` of seed `s` is `label_field(window, s, r)`. Estimators count
//! successes as integers and sum them, so results do not depend on how
//! rayon splits the replica range.

mod fit;
mod kappa;

pub use fit::{fit_decay, DecayModel, FitPoint, FitResult};
pub use kappa::{corridor_kappa, KappaEstimate, PathPolicy, EXHAUSTIVE_CAP};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cayley::{build_window, GraphWindow, GroupModel};
use crate::error::{Error, Result};
use crate::events::{
    coarse_field, corridor_crossing, hybrid_crossing_count, local_existence_uniqueness, piv,
    smallest_closed_coarse_cutset, sprinkled_uniqueness, truncated_radius_event, truncated_volume_event,
    two_seed_connected, uniqueness, SeedSchedule,
};
use crate::geometry::PathSpec;
use crate::perco::{label_field, origin_cluster, Labels};
use crate::stats::{wilson_interval, Z95};

/// A success frequency with its Wilson 95% interval and provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub p_hat: f64,
    pub n_samples: u64,
    pub successes: u64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub config_digest: String,
}

impl Estimate {
    pub fn from_counts(successes: u64, n_samples: u64, seed: u64, config_digest: String) -> Self {
        let p_hat = if n_samples == 0 { 0.0 } else { successes as f64 / n_samples as f64 };
        let (ci_low, ci_high) = wilson_interval(successes, n_samples, Z95);
        Estimate { p_hat, n_samples, successes, ci_low, ci_high, seed, config_digest }
    }

    /// Binomial standard error `sqrt(p̂(1-p̂)/N)`.
    pub fn std_error(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.n_samples.max(1) as f64).sqrt()
    }

    pub fn overlaps(&self, other: &Estimate) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }
}

/// Event name plus parameters as written in an experiment config.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventEntry {
    pub name: String,
    #[serde(default)]
    pub params: EventParams,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<u32>,
}

/// The event vocabulary. In every case `n` is the grid radius (or volume
/// threshold for `trunc_volume`) and the event is centred at the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum EventKind {
    /// `Piv(m, n)`.
    Piv {
        m: u32,
    },
    /// `U(m, n)`.
    Uniq {
        m: u32,
    },
    /// `U_{p, p+δ}(m, n)`.
    SprinkledUniq {
        m: u32,
        delta: f64,
    },
    /// Corridor crossing of thickness `n` along `length` steps of the first generator.
    Corridor {
        length: u32,
    },
    TruncRadius,
    TruncVolume,
    /// `{B_{n/10} ↔ ∂B_n} ∩ U(n/5, n/2)`.
    Prop1,
    /// Seeds at the origin and at `distance` steps of the first generator;
    /// `sigma` defaults to the seed schedule's `σ(n)`.
    TwoSeed {
        distance: u32,
        sigma: Option<u32>,
    },
    /// The closed coarse cutset around the origin exists and has size `>= n`.
    CoarseCutset {
        k: u32,
    },
    /// Exactly one hybrid crossing cluster, `N_r(Y_r) = 1`.
    HybridCount {
        r: u32,
        delta: f64,
    },
}

fn need<T: Copy>(name: &str, field: &str, v: Option<T>) -> Result<T> {
    v.ok_or_else(|| Error::Config(format!("event `{name}` needs parameter `{field}`")))
}

impl EventKind {
    pub const NAMES: [&'static str; 10] = [
        "piv",
        "uniq",
        "sprinkled_uniq",
        "corridor",
        "trunc_radius",
        "trunc_volume",
        "prop1",
        "two_seed",
        "coarse_cutset",
        "hybrid_count",
    ];

    pub fn parse(entry: &EventEntry) -> Result<Self> {
        let p = &entry.params;
        let name = entry.name.as_str();
        let delta = || -> Result<f64> {
            let d = need(name, "delta", p.delta)?;
            if d.is_finite() && d >= 0.0 {
                Ok(d)
            } else {
                Err(Error::Config(format!("event `{name}` needs delta >= 0, got {d}")))
            }
        };
        Ok(match name {
            "piv" => EventKind::Piv { m: need(name, "m", p.m)? },
            "uniq" => EventKind::Uniq { m: need(name, "m", p.m)? },
            "sprinkled_uniq" => EventKind::SprinkledUniq { m: need(name, "m", p.m)?, delta: delta()? },
            "corridor" => EventKind::Corridor { length: need(name, "length", p.length)? },
            "trunc_radius" => EventKind::TruncRadius,
            "trunc_volume" => EventKind::TruncVolume,
            "prop1" => EventKind::Prop1,
            "two_seed" => EventKind::TwoSeed { distance: need(name, "distance", p.distance)?, sigma: p.sigma },
            "coarse_cutset" => EventKind::CoarseCutset { k: need(name, "k", p.k)? },
            "hybrid_count" => EventKind::HybridCount { r: need(name, "r", p.r)?, delta: delta()? },
            other => return Err(Error::UnknownEvent(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            EventKind::Piv { .. } => "piv",
            EventKind::Uniq { .. } => "uniq",
            EventKind::SprinkledUniq { .. } => "sprinkled_uniq",
            EventKind::Corridor { .. } => "corridor",
            EventKind::TruncRadius => "trunc_radius",
            EventKind::TruncVolume => "trunc_volume",
            EventKind::Prop1 => "prop1",
            EventKind::TwoSeed { .. } => "two_seed",
            EventKind::CoarseCutset { .. } => "coarse_cutset",
            EventKind::HybridCount { .. } => "hybrid_count",
        }
    }

    /// The auxiliary radius reported in the `m_aux` CSV column.
    pub fn m_aux(&self) -> Option<u32> {
        match *self {
            EventKind::Piv { m } | EventKind::Uniq { m } | EventKind::SprinkledUniq { m, .. } => Some(m),
            EventKind::Corridor { length } => Some(length),
            EventKind::TwoSeed { distance, .. } => Some(distance),
            EventKind::CoarseCutset { k } => Some(k),
            EventKind::HybridCount { r, .. } => Some(r),
            EventKind::TruncRadius | EventKind::TruncVolume | EventKind::Prop1 => None,
        }
    }

    /// Checks the parameters and the margin rule for grid value `n` in a
    /// window of radius `w`.
    pub fn validate(&self, n: u32, w: u32) -> Result<()> {
        let margin = |ok: bool, rule: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Margin(format!("{} at n = {n}, W = {w} violates the rule {rule}", self.name())))
            }
        };
        let config = |ok: bool, rule: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Config(format!("{} at n = {n} needs {rule}", self.name())))
            }
        };
        match *self {
            EventKind::Piv { m } | EventKind::Uniq { m } | EventKind::SprinkledUniq { m, .. } => {
                config(m >= 1 && m <= n, "1 <= m <= n")?;
                margin(n <= w, "n <= W")
            }
            EventKind::Corridor { length } => margin(length + n <= w, "length + n <= W"),
            EventKind::TruncRadius => margin(3 * n <= w, "3n <= W"),
            EventKind::TruncVolume => margin(w >= 1, "W >= 1"),
            EventKind::Prop1 => {
                config(n >= 5, "n >= 5")?;
                margin(n <= w, "n <= W")
            }
            EventKind::TwoSeed { distance, .. } => {
                config(distance <= n, "distance <= n")?;
                margin(n <= w, "n <= W")
            }
            EventKind::CoarseCutset { k } => {
                config(k >= 10, "k >= 10")?;
                margin(k < w, "k < W")
            }
            EventKind::HybridCount { r, .. } => {
                config(r <= 2 * n, "r <= 2n")?;
                margin(4 * n <= w, "4n <= W")
            }
        }
    }

    /// Evaluates the event on one replica's labels at parameter `p`.
    pub fn evaluate<L: Labels>(&self, window: &GraphWindow, labels: &L, p: f64, n: u32) -> Result<bool> {
        let o = window.origin();
        let cfg = labels.at(p);
        match *self {
            EventKind::Piv { m } => piv(window, &cfg, o, m, n),
            EventKind::Uniq { m } => uniqueness(window, &cfg, o, m, n),
            EventKind::SprinkledUniq { m, delta } => {
                sprinkled_uniqueness(window, labels, p, (p + delta).min(1.0), o, m, n)
            }
            EventKind::Corridor { length } => corridor_crossing(window, &cfg, &generator_path(window, length)?, n),
            EventKind::TruncRadius => truncated_radius_event(window, &cfg, n),
            EventKind::TruncVolume => truncated_volume_event(window, &cfg, n as usize),
            EventKind::Prop1 => local_existence_uniqueness(window, &cfg, n),
            EventKind::TwoSeed { distance, sigma } => {
                let y = generator_path(window, distance)?.end();
                let sigma = sigma.unwrap_or_else(|| SeedSchedule::default().sigma(u64::from(n)) as u32);
                two_seed_connected(window, &cfg, o, y, n, sigma)
            }
            EventKind::CoarseCutset { k } => {
                let field = coarse_field(window, labels, p, k)?;
                Ok(smallest_closed_coarse_cutset(&field).is_some_and(|c| c.size >= n as usize))
            }
            EventKind::HybridCount { r, delta } => Ok(hybrid_crossing_count(window, labels, p, delta, r, n)? == 1),
        }
    }
}

/// The path from the origin taking `steps` times the first generator.
pub fn generator_path(window: &GraphWindow, steps: u32) -> Result<PathSpec> {
    let group = window.group();
    let mut element = group.identity();
    let mut vertices = vec![window.origin()];
    for _ in 0..steps {
        element = group.multiply(&element, 0);
        let v = window
            .vertex_of(&element)
            .ok_or_else(|| Error::Margin(format!("a path of {steps} generator steps leaves the window")))?;
        vertices.push(v);
    }
    PathSpec::new(window, vertices)
}

pub(super) fn check_request(p: f64, n_samples: u64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
    }
    if n_samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    Ok(())
}

/// Hex SHA-256 of the JSON encoding of `value`.
pub fn digest_of<T: Serialize>(value: &T) -> Result<String> {
    let bytes = serde_json::to_vec(value)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

pub(super) fn request_digest(
    window: &GraphWindow,
    what: &impl Serialize,
    p: f64,
    seed: u64,
    n_samples: u64,
) -> Result<String> {
    digest_of(&serde_json::json!({
        "group": window.group().spec(),
        "W": window.radius(),
        "request": what,
        "p": p,
        "seed": seed,
        "n_samples": n_samples,
    }))
}

/// Sums per-replica indicator vectors of length `k` over replicas
/// `start..start + n_samples`.
pub(super) fn count_replicas<F>(start: u64, n_samples: u64, k: usize, f: F) -> Result<Vec<u64>>
where
    F: Fn(u64) -> Result<Vec<bool>> + Sync,
{
    (start..start + n_samples)
        .into_par_iter()
        .map(|r| f(r).map(|hits| hits.into_iter().map(u64::from).collect::<Vec<u64>>()))
        .try_reduce(
            || vec![0; k],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )
}

fn estimate_range(
    window: &GraphWindow,
    kind: &EventKind,
    n: u32,
    p: f64,
    seed: u64,
    start: u64,
    n_samples: u64,
) -> Result<Estimate> {
    check_request(p, n_samples)?;
    kind.validate(n, window.radius())?;
    let hits = count_replicas(start, n_samples, 1, |r| {
        Ok(vec![kind.evaluate(window, &label_field(window, seed, r), p, n)?])
    })?;
    let digest = request_digest(window, &(kind, n, start), p, seed, n_samples)?;
    Ok(Estimate::from_counts(hits[0], n_samples, seed, digest))
}

/// Frequency of the event over replicas `0..n_samples` of `seed`.
pub fn estimate_event(
    window: &GraphWindow,
    kind: &EventKind,
    n: u32,
    p: f64,
    seed: u64,
    n_samples: u64,
) -> Result<Estimate> {
    estimate_range(window, kind, n, p, seed, 0, n_samples)
}

/// One estimate per grid value, all computed on the same replicas.
pub fn estimate_event_grid(
    window: &GraphWindow,
    kind: &EventKind,
    ns: &[u32],
    p: f64,
    seed: u64,
    n_samples: u64,
) -> Result<Vec<Estimate>> {
    check_request(p, n_samples)?;
    for &n in ns {
        kind.validate(n, window.radius())?;
    }
    let hits = count_replicas(0, n_samples, ns.len(), |r| {
        let labels = label_field(window, seed, r);
        ns.iter().map(|&n| kind.evaluate(window, &labels, p, n)).collect()
    })?;
    ns.iter()
        .zip(hits)
        .map(|(&n, h)| {
            Ok(Estimate::from_counts(h, n_samples, seed, request_digest(window, &(kind, n), p, seed, n_samples)?))
        })
        .collect()
}

/// `P[n_vol <= |C_o|, o not joined to the window boundary]` for every
/// threshold, sharing one origin-cluster exploration per replica.
pub fn estimate_volume_tail(
    window: &GraphWindow,
    p: f64,
    thresholds: &[usize],
    seed: u64,
    n_samples: u64,
) -> Result<Vec<Estimate>> {
    check_request(p, n_samples)?;
    EventKind::TruncVolume.validate(0, window.radius())?;
    let hits = count_replicas(0, n_samples, thresholds.len(), |r| {
        let labels = label_field(window, seed, r);
        let c = origin_cluster(window, &labels.at(p));
        Ok(thresholds.iter().map(|&t| !c.reached_boundary && c.volume >= t).collect())
    })?;
    thresholds
        .iter()
        .zip(hits)
        .map(|(&t, h)| {
            let digest = request_digest(window, &("trunc_volume", t), p, seed, n_samples)?;
            Ok(Estimate::from_counts(h, n_samples, seed, digest))
        })
        .collect()
}

/// `P[o ↔ ∂B_W]` for each `W` of an increasing ladder, as a proxy for `θ(p)`.
///
/// All rungs are read off one window of the largest radius; since labels
/// depend only on edge keys this is the same as building each window.
pub fn theta_hat(group: &GroupModel, p: f64, ladder: &[u32], seed: u64, n_samples: u64) -> Result<Vec<Estimate>> {
    check_request(p, n_samples)?;
    if ladder.is_empty() || ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!("the W ladder must be non-empty and increasing, got {ladder:?}")));
    }
    let window = build_window(group, *ladder.last().expect("non-empty"))?;
    let hits = count_replicas(0, n_samples, ladder.len(), |r| {
        let labels = label_field(&window, seed, r);
        let c = origin_cluster(&window, &labels.at(p));
        Ok(ladder.iter().map(|&w| c.reached_boundary || c.max_dist >= w).collect())
    })?;
    ladder
        .iter()
        .zip(hits)
        .map(|(&w, h)| {
            let digest = request_digest(&window, &("theta", w), p, seed, n_samples)?;
            Ok(Estimate::from_counts(h, n_samples, seed, digest))
        })
        .collect()
}

/// Result of [`uniqueness_zone_scan`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZoneScan {
    /// Largest inner radius `s` with `P̂[Piv(s, n)] <= threshold`.
    pub s: u32,
    pub n: u32,
    pub threshold: f64,
    /// Every probe `(s, estimate)` in the order it was made.
    pub probes: Vec<(u32, Estimate)>,
}

/// Binary search for the widest uniqueness zone `(s, n)` at level `threshold`.
///
/// `Piv(s, n)` grows with `s`, so the search looks for the largest `s` in
/// `[1, n]` whose estimate is at most `threshold`. Each probe uses its own
/// block of `n_samples` replicas.
pub fn uniqueness_zone_scan(
    window: &GraphWindow,
    p: f64,
    n: u32,
    threshold: f64,
    seed: u64,
    n_samples: u64,
) -> Result<ZoneScan> {
    if n == 0 || n > window.radius() {
        return Err(Error::Margin(format!("zone scan needs 1 <= n <= W, got n = {n}, W = {}", window.radius())));
    }
    let mut probes = Vec::new();
    let mut probe = |s: u32| -> Result<bool> {
        let start = probes.len() as u64 * n_samples;
        let est = estimate_range(window, &EventKind::Piv { m: s }, n, p, seed, start, n_samples)?;
        let good = est.p_hat <= threshold;
        probes.push((s, est));
        Ok(good)
    };
    if !probe(1)? {
        return Err(Error::Unreachable { threshold, n });
    }
    let (mut lo, mut hi) = (1, n + 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if probe(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ZoneScan { s: lo, n, threshold, probes })
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Resource(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_group, GroupSpec};
    use crate::perco::OpenSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z2(w: u32) -> GraphWindow {
        build_window(&build_group(&GroupSpec::square_lattice()).unwrap(), w).unwrap()
    }

    fn entry(name: &str, params: EventParams) -> EventEntry {
        EventEntry { name: name.into(), params }
    }

    #[test]
    fn piv_at_one_vanishes() {
        let w = z2(6);
        let e = estimate_event(&w, &EventKind::Piv { m: 1 }, 4, 1.0, 1, 200).unwrap();
        assert_eq!((e.p_hat, e.ci_low), (0.0, 0.0));
        assert!(e.ci_high > 0.0 && e.ci_high < 0.05);
    }

    #[test]
    fn single_edge_corridor() {
        let w = z2(2);
        let e = estimate_event(&w, &EventKind::Corridor { length: 1 }, 0, 0.5, 3, 10_000).unwrap();
        assert!(e.ci_low <= 0.5 && 0.5 <= e.ci_high, "{e:?}");
    }

    #[test]
    fn piv_matches_enumeration() {
        // enumerate all configurations of the window B_1 of Z^2 (4 edges)
        let w = z2(1);
        let edges = w.edge_count();
        let exact = (0..1u64 << edges)
            .filter(|&mask| piv(&w, &OpenSet::from_mask(mask, edges), 0, 1, 1).unwrap())
            .count() as f64
            / (1u64 << edges) as f64;
        assert_eq!(exact, 15.0 / 16.0);
        let e = estimate_event(&w, &EventKind::Piv { m: 1 }, 1, 0.5, 7, 20_000).unwrap();
        assert!((e.p_hat - exact).abs() <= 3.0 * (exact * (1.0 - exact) / 20_000.0).sqrt(), "{e:?}");
    }

    #[test]
    fn vocabulary_parses_and_validates() {
        for name in EventKind::NAMES {
            let params = EventParams {
                m: Some(1),
                delta: Some(0.1),
                length: Some(1),
                k: Some(10),
                r: Some(1),
                distance: Some(1),
                sigma: None,
            };
            assert_eq!(EventKind::parse(&entry(name, params)).unwrap().name(), name);
        }
        assert!(matches!(EventKind::parse(&entry("foo", EventParams::default())), Err(Error::UnknownEvent(_))));
        assert!(matches!(EventKind::parse(&entry("piv", EventParams::default())), Err(Error::Config(_))));
        let err = EventKind::TruncRadius.validate(7, 20).unwrap_err();
        assert!(matches!(err, Error::Margin(_)) && err.to_string().contains("3n <= W"));
        assert!(EventKind::TruncRadius.validate(6, 18).is_ok());
    }

    #[test]
    fn estimates_do_not_depend_on_workers() {
        let w = z2(12);
        let kind = EventKind::TruncRadius;
        let one = with_workers(1, || estimate_event(&w, &kind, 4, 0.55, 9, 500)).unwrap().unwrap();
        let four = with_workers(4, || estimate_event(&w, &kind, 4, 0.55, 9, 500)).unwrap().unwrap();
        assert_eq!(one, four);
        let grid = estimate_event_grid(&w, &kind, &[2, 4], 0.55, 9, 500).unwrap();
        assert_eq!(grid[1].successes, one.successes);
    }

    #[test]
    fn volume_tail_matches_event() {
        let w = z2(8);
        let tail = estimate_volume_tail(&w, 0.5, &[1, 5, 20], 4, 400).unwrap();
        for (t, est) in [1u32, 5, 20].iter().zip(&tail) {
            let direct = estimate_event(&w, &EventKind::TruncVolume, *t, 0.5, 4, 400).unwrap();
            assert_eq!(direct.successes, est.successes);
        }
        assert!(tail.windows(2).all(|p| p[0].successes >= p[1].successes));
        // n_vol = 1 is the complement of reaching the boundary
        let reach = theta_hat(&build_group(&GroupSpec::square_lattice()).unwrap(), 0.5, &[8], 4, 400).unwrap();
        assert_eq!(tail[0].successes + reach[0].successes, 400);
    }

    #[test]
    fn theta_extremes_and_monotone() {
        let g = build_group(&GroupSpec::square_lattice()).unwrap();
        assert!(theta_hat(&g, 1.0, &[2, 4], 1, 50).unwrap().iter().all(|e| e.p_hat == 1.0));
        assert!(theta_hat(&g, 0.0, &[1, 4], 1, 50).unwrap().iter().all(|e| e.p_hat == 0.0));
        let t = theta_hat(&g, 0.6, &[4, 8, 16], 1, 400).unwrap();
        assert!(t.windows(2).all(|p| p[0].successes >= p[1].successes));
        assert!(theta_hat(&g, 0.6, &[8, 4], 1, 10).is_err());
    }

    #[test]
    fn zone_scan_edges() {
        let w = z2(8);
        assert_eq!(uniqueness_zone_scan(&w, 1.0, 6, 0.05, 1, 50).unwrap().s, 6);
        assert_eq!(uniqueness_zone_scan(&w, 0.5, 6, 1.0, 1, 50).unwrap().s, 6);
        assert!(matches!(uniqueness_zone_scan(&w, 0.3, 1, 0.5, 1, 50), Err(Error::Unreachable { .. })));
        let scan = uniqueness_zone_scan(&w, 0.7, 8, 0.2, 1, 400).unwrap();
        for (s, est) in &scan.probes {
            assert_eq!(est.p_hat <= 0.2, *s <= scan.s);
        }
    }

    #[test]
    fn wilson_coverage() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let covered = (0..1000)
            .filter(|_| {
                let hits = (0..200).filter(|_| rng.gen::<f64>() < 0.3).count() as u64;
                let e = Estimate::from_counts(hits, 200, 0, String::new());
                e.ci_low <= 0.3 && 0.3 <= e.ci_high
            })
            .count();
        assert!(covered >= 930, "{covered}");
    }
}
