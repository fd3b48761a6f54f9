//! Events evaluated on a single configuration or on coupled labels.
//!
//! Ratio radii such as `n/10` are floored. "`A ↔ ∂B_n`" is read as: the open
//! cluster of `A` inside `B_n` contains a vertex at distance exactly `n`.

mod coarse;
mod hybrid;
mod seeds;

pub use coarse::{coarse_cutset_sizes, coarse_field, smallest_closed_coarse_cutset, CoarseCutset, CoarseField};
pub use hybrid::{growth_everywhere_event, hybrid_crossing_count};
pub use seeds::SeedSchedule;

use crate::cayley::{GraphWindow, LocalBall, Scratch};
use crate::error::{Error, Result};
use crate::geometry::{corridor, PathSpec, VertexSet};
use crate::perco::{connected_in, origin_cluster, Config, EdgeStates, Labels, UnionFind};

/// Union-find over the first `len` positions of `ball`, joined by open edges.
pub(crate) fn ball_union<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    ball: &LocalBall,
    pos: &Scratch,
    len: usize,
) -> UnionFind {
    let mut uf = UnionFind::new(len);
    for i in 0..len {
        for &(v, e) in window.neighbors(ball.vertices[i]) {
            if let Some(j) = pos.get(v as usize) {
                let j = j as usize;
                if j > i && j < len && states.is_open(e as usize) {
                    uf.union(i, j);
                }
            }
        }
    }
    uf
}

/// Roots of the clusters (of the first `len` positions) meeting the first
/// `inner` positions and containing a position at distance `outer`.
pub(crate) fn crossing_roots(uf: &mut UnionFind, ball: &LocalBall, inner: usize, len: usize, outer: u32) -> Vec<usize> {
    let start = if outer == 0 { 0 } else { ball.prefix_len(outer - 1) };
    let mut reaching: Vec<usize> = (start..len).map(|j| uf.find(j)).collect();
    reaching.sort_unstable();
    reaching.dedup();
    let mut roots: Vec<usize> =
        (0..inner.min(len)).map(|j| uf.find(j)).filter(|r| reaching.binary_search(r).is_ok()).collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn check_annulus(m: u32, n: u32) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!("annulus radii need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    Ok(())
}

fn ball_checked(window: &GraphWindow, x: usize, n: u32, scratch: &mut Scratch) -> Result<LocalBall> {
    if x >= window.vertex_count() {
        return Err(Error::InvalidInput(format!("vertex {x} is outside the window")));
    }
    if window.dist(x) + n > window.radius() {
        return Err(Error::Margin(format!(
            "B_{n} around a vertex at distance {} leaves the window of radius {}",
            window.dist(x),
            window.radius()
        )));
    }
    Ok(window.local_ball_with(x, n, scratch))
}

/// Number of clusters of `B_n(x)` meeting `B_m(x)` and reaching distance `n` from `x`.
pub fn crossing_count<S: EdgeStates>(window: &GraphWindow, states: &S, x: usize, m: u32, n: u32) -> Result<usize> {
    let mut scratch = Scratch::new(window.vertex_count());
    let ball = ball_checked(window, x, n, &mut scratch)?;
    let mut uf = ball_union(window, states, &ball, &scratch, ball.len());
    Ok(crossing_roots(&mut uf, &ball, ball.prefix_len(m), ball.len(), n).len())
}

/// `Piv(m, n)` at `x`: two distinct clusters of `B_n(x)` each meet `B_m(x)`
/// and reach distance `n` from `x`.
pub fn piv<S: EdgeStates>(window: &GraphWindow, states: &S, x: usize, m: u32, n: u32) -> Result<bool> {
    check_annulus(m, n)?;
    Ok(crossing_count(window, states, x, m, n)? >= 2)
}

/// `U(m, n)`: at most one crossing cluster, the complement of `Piv(m, n)`.
pub fn uniqueness<S: EdgeStates>(window: &GraphWindow, states: &S, x: usize, m: u32, n: u32) -> Result<bool> {
    piv(window, states, x, m, n).map(|b| !b)
}

/// `U_{p,q}(m, n)`: every `p`-cluster of `B_n(x)` crossing from `B_m(x)` to
/// distance `n` lies in a single `q`-cluster of `B_n(x)`.
#[allow(clippy::too_many_arguments)]
pub fn sprinkled_uniqueness<L: Labels>(
    window: &GraphWindow,
    labels: &L,
    p: f64,
    q: f64,
    x: usize,
    m: u32,
    n: u32,
) -> Result<bool> {
    if p > q {
        return Err(Error::InvalidInput(format!("sprinkling needs p <= q, got p = {p}, q = {q}")));
    }
    check_annulus(m, n)?;
    let mut scratch = Scratch::new(window.vertex_count());
    let ball = ball_checked(window, x, n, &mut scratch)?;
    let mut up = ball_union(window, &Config::new(labels, p), &ball, &scratch, ball.len());
    let roots = crossing_roots(&mut up, &ball, ball.prefix_len(m), ball.len(), n);
    if roots.len() <= 1 {
        return Ok(true);
    }
    let mut uq = ball_union(window, &Config::new(labels, q), &ball, &scratch, ball.len());
    let target = uq.find(roots[0]);
    Ok(roots.iter().all(|&r| uq.find(r) == target))
}

/// `o(γ) ↔ e(γ)` inside the corridor `B_n(γ)`.
pub fn corridor_crossing<S: EdgeStates>(window: &GraphWindow, states: &S, path: &PathSpec, n: u32) -> Result<bool> {
    let region = corridor(window, path, n)?;
    connected_in(window, states, &region, &VertexSet::single(path.start()), &VertexSet::single(path.end()))
}

/// `{o ↔ ∂B_n, o not joined to the window boundary}`. Requires `3n <= W`.
pub fn truncated_radius_event<S: EdgeStates>(window: &GraphWindow, states: &S, n: u32) -> Result<bool> {
    if 3 * n > window.radius() {
        return Err(Error::Margin(format!("truncated radius event at n = {n} needs 3n <= W = {}", window.radius())));
    }
    let c = origin_cluster(window, states);
    Ok(!c.reached_boundary && c.max_dist >= n)
}

/// `{n_vol <= |C_o|, o not joined to the window boundary}`. Requires `W >= 1`.
pub fn truncated_volume_event<S: EdgeStates>(window: &GraphWindow, states: &S, n_vol: usize) -> Result<bool> {
    if window.radius() == 0 {
        return Err(Error::Margin("truncated volume event needs W >= 1".into()));
    }
    let c = origin_cluster(window, states);
    Ok(!c.reached_boundary && c.volume >= n_vol)
}

/// `{B_{n/10} ↔ ∂B_n} ∩ U(n/5, n/2)` at the origin. Requires `5 <= n <= W`.
pub fn local_existence_uniqueness<S: EdgeStates>(window: &GraphWindow, states: &S, n: u32) -> Result<bool> {
    if n < 5 {
        return Err(Error::InvalidInput(format!("the local event needs n >= 5 so that n/5 >= 1, got {n}")));
    }
    let mut scratch = Scratch::new(window.vertex_count());
    let ball = ball_checked(window, window.origin(), n, &mut scratch)?;
    Ok(local_event_in(window, states, &ball, &scratch, n))
}

/// The local event on a prepared ball of radius `n` around its centre.
pub(crate) fn local_event_in<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    ball: &LocalBall,
    pos: &Scratch,
    n: u32,
) -> bool {
    let mut uf = ball_union(window, states, ball, pos, ball.len());
    if crossing_roots(&mut uf, ball, ball.prefix_len(n / 10), ball.len(), n).is_empty() {
        return false;
    }
    let half = ball.prefix_len(n / 2);
    let mut inner = ball_union(window, states, ball, pos, half);
    crossing_roots(&mut inner, ball, ball.prefix_len(n / 5), half, n / 2).len() <= 1
}

/// `B_σ(x) ↔ B_σ(y)` inside `B_n`, with both seeds clipped to `B_n`.
pub fn two_seed_connected<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    x: usize,
    y: usize,
    n: u32,
    sigma: u32,
) -> Result<bool> {
    if n > window.radius() {
        return Err(Error::Margin(format!("B_{n} exceeds the window of radius {}", window.radius())));
    }
    let mut scratch = Scratch::new(window.vertex_count());
    let mut seed = |v: usize| -> Result<VertexSet> {
        if window.dist(v) > n {
            return Err(Error::InvalidInput(format!("seed centre {v} lies outside B_{n}")));
        }
        let b = ball_checked(window, v, sigma, &mut scratch)?;
        Ok(b.vertices.into_iter().filter(|&u| window.dist(u) <= n).collect())
    };
    let a = seed(x)?;
    let b = seed(y)?;
    connected_in(window, states, &VertexSet::ball(window, n), &a, &b)
}
