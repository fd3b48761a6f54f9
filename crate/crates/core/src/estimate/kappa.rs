use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_request, count_replicas, request_digest, Estimate};
use crate::cayley::GraphWindow;
use crate::error::{Error, Result};
use crate::events::corridor_crossing;
use crate::geometry::{geodesic, PathSpec};
use crate::perco::{label_field, Labels};

/// Longest path length accepted by the exhaustive policy by default.
pub const EXHAUSTIVE_CAP: u32 = 6;

/// Which paths from the origin the corridor minimum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathPolicy {
    /// Every self-avoiding path of length `<= m`; refused when `m > cap`.
    Exhaustive { cap: u32 },
    /// One BFS geodesic to each vertex at distance `m`.
    GeodesicFamily,
    /// `count` random self-avoiding walks of length `m`.
    SampledSaw { count: usize },
    /// Geodesics plus `count` random self-avoiding walks.
    GeodesicsAndSaws { count: usize },
}

impl Default for PathPolicy {
    fn default() -> Self {
        PathPolicy::GeodesicsAndSaws { count: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaEstimate {
    /// Estimate for the worst path of the family.
    pub estimate: Estimate,
    /// True unless the family was exhaustive.
    pub upper_bound: bool,
    pub worst_path: PathSpec,
    /// Every path evaluated with its estimate, in family order.
    pub per_path: Vec<(PathSpec, Estimate)>,
}

fn all_paths(window: &GraphWindow, m: u32) -> Vec<Vec<usize>> {
    fn extend(window: &GraphWindow, path: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<usize>>) {
        out.push(path.clone());
        if path.len() > m {
            return;
        }
        let last = *path.last().expect("non-empty");
        for &(v, _) in window.neighbors(last) {
            let v = v as usize;
            if !path.contains(&v) {
                path.push(v);
                extend(window, path, m, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(window, &mut vec![window.origin()], m as usize, &mut out);
    out
}

fn sampled_walks(window: &GraphWindow, m: u32, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let mut path = vec![window.origin()];
        while path.len() <= m as usize {
            let last = *path.last().expect("non-empty");
            let free: Vec<usize> =
                window.neighbors(last).iter().map(|&(v, _)| v as usize).filter(|v| !path.contains(v)).collect();
            match free.choose(&mut rng) {
                Some(&v) => path.push(v),
                None => break,
            }
        }
        if path.len() == m as usize + 1 {
            out.push(path);
        }
    }
    out
}

fn family(window: &GraphWindow, m: u32, policy: PathPolicy, seed: u64) -> Result<Vec<Vec<usize>>> {
    let geodesics = || -> Result<Vec<Vec<usize>>> {
        window.sphere(m).map(|y| geodesic(window, window.origin(), y).map(|p| p.vertices().to_vec())).collect()
    };
    let paths = match policy {
        PathPolicy::Exhaustive { cap } => {
            if m > cap {
                return Err(Error::Resource(format!("exhaustive path enumeration is capped at length {cap}, got {m}")));
            }
            all_paths(window, m)
        }
        PathPolicy::GeodesicFamily => geodesics()?,
        PathPolicy::SampledSaw { count } => sampled_walks(window, m, count, seed),
        PathPolicy::GeodesicsAndSaws { count } => {
            let mut g = geodesics()?;
            g.extend(sampled_walks(window, m, count, seed));
            g
        }
    };
    let unique: BTreeSet<Vec<usize>> = paths.into_iter().collect();
    if unique.is_empty() {
        return Err(Error::InvalidInput(format!("no path of length {m} found for the corridor family")));
    }
    Ok(unique.into_iter().collect())
}

/// Empirical `κ_p(m, n)`: the smallest crossing frequency over a family of
/// paths from the origin, each estimated on replicas `0..n_samples`.
///
/// Every path sees the same replicas, so the minimum over a subfamily is
/// never below the minimum over a larger family. Requires `m + n <= W`.
#[allow(clippy::too_many_arguments)]
pub fn corridor_kappa(
    window: &GraphWindow,
    m: u32,
    n: u32,
    p: f64,
    policy: PathPolicy,
    seed: u64,
    n_samples: u64,
) -> Result<KappaEstimate> {
    check_request(p, n_samples)?;
    if m + n > window.radius() {
        return Err(Error::Margin(format!(
            "corridor of length {m} and thickness {n} needs m + n <= W = {}",
            window.radius()
        )));
    }
    let paths: Vec<PathSpec> =
        family(window, m, policy, seed)?.into_iter().map(|v| PathSpec::new(window, v)).collect::<Result<_>>()?;
    let per_path = paths
        .into_par_iter()
        .map(|path| {
            let hits = count_replicas(0, n_samples, 1, |r| {
                Ok(vec![corridor_crossing(window, &label_field(window, seed, r).at(p), &path, n)?])
            })?;
            let digest = request_digest(window, &("corridor_kappa", &path, n), p, seed, n_samples)?;
            Ok((path, Estimate::from_counts(hits[0], n_samples, seed, digest)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (worst_path, estimate) =
        per_path.iter().min_by_key(|(_, e)| e.successes).cloned().expect("family is non-empty");
    Ok(KappaEstimate { estimate, upper_bound: !matches!(policy, PathPolicy::Exhaustive { .. }), worst_path, per_path })
}
