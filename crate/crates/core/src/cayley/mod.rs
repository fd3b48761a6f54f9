//! Cayley graphs of polynomial growth and their finite windows.

mod group;
mod window;

pub use group::{build_group, Element, GroupModel, GroupSpec};
pub use window::{
    build_window, build_window_with_cap, canonical_edge_key, edge_key_digest, GraphWindow, LocalBall, Scratch,
    DEFAULT_VERTEX_CAP, UNREACHED,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::linear_fit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BallMetrics {
    pub ball_size: usize,
    pub sphere_size: usize,
    /// Number of edges with exactly one endpoint in `B_r`.
    pub edge_boundary_size: usize,
}

/// Ball, sphere and edge-boundary sizes at radius `r < W`.
pub fn ball_metrics(window: &GraphWindow, r: u32) -> Result<BallMetrics> {
    if r >= window.radius() {
        return Err(Error::Margin(format!("edge boundary of B_{r} needs r < W = {}", window.radius())));
    }
    Ok(BallMetrics {
        ball_size: window.ball_size(r),
        sphere_size: window.sphere(r).len(),
        edge_boundary_size: edge_boundary(window, r),
    })
}

fn edge_boundary(window: &GraphWindow, r: u32) -> usize {
    window.sphere(r).map(|u| window.neighbors(u).iter().filter(|&&(v, _)| window.dist(v as usize) > r).count()).sum()
}

/// Number of edges with both endpoints in `B_r`.
pub fn ball_edge_count(window: &GraphWindow, r: u32) -> usize {
    let r = r.min(window.radius());
    (0..window.ball_size(r))
        .map(|u| window.neighbors(u).iter().filter(|&&(v, _)| (v as usize) > u && window.dist(v as usize) <= r).count())
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub d_hat: f64,
    /// `1 - R^2` of the log-log fit.
    pub residual: f64,
}

/// Slope of `log |B_n|` against `log n` for `n` in `[n_max/2, n_max]`.
pub fn growth_exponent_fit(group: &GroupModel, n_max: u32) -> Result<GrowthFit> {
    if n_max < 4 {
        return Err(Error::InvalidInput(format!("growth fit needs n_max >= 4, got {n_max}")));
    }
    let window = build_window(group, n_max)?;
    let points: Vec<(f64, f64)> =
        (n_max / 2..=n_max).map(|n| ((n as f64).ln(), (window.ball_size(n) as f64).ln())).collect();
    let weights = vec![1.0; points.len()];
    let fit = linear_fit(&points, &weights);
    Ok(GrowthFit { d_hat: fit.slope, residual: 1.0 - fit.r2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioScan {
    pub m: u32,
    pub ratio: f64,
}

/// Minimiser of `|∂B_m| / |B_m|` over `m` in `[n, 2n)`.
///
/// For `n = 0` the range is empty and the answer is `m = 0`, ratio = degree.
pub fn ratio_scan(window: &GraphWindow, n: u32) -> Result<RatioScan> {
    if 2 * n > window.radius() || (n == 0 && window.radius() == 0) {
        return Err(Error::Margin(format!("ratio scan at n = {n} needs 2n <= W = {} (and W >= 1)", window.radius())));
    }
    if n == 0 {
        return Ok(RatioScan { m: 0, ratio: window.degree() as f64 });
    }
    let mut best = RatioScan { m: n, ratio: f64::INFINITY };
    for m in n..2 * n {
        let ratio = edge_boundary(window, m) as f64 / window.ball_size(m) as f64;
        if ratio < best.ratio {
            best = RatioScan { m, ratio };
        }
    }
    Ok(best)
}
