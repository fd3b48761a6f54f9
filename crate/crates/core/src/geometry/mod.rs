//! Exposed spheres, annuli, corridors and cutsets on a window.
//!
//! Everywhere a definition mentions infinity, the window boundary (the
//! vertices at distance `W` from the origin) stands in for it.

mod cutset;
mod sets;

pub(crate) use cutset::outer_cutset;
pub use cutset::{analyze_cutset, connected_sets_containing, isoperimetric_constant, min_vertex_cut, Cutset};
pub use sets::{PathSpec, VertexSet};

use serde::Serialize;

use crate::cayley::{GraphWindow, UNREACHED};
use crate::error::{Error, Result};

fn check_vertex(window: &GraphWindow, v: usize) -> Result<()> {
    if v >= window.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "vertex {v} is outside the window ({} vertices)",
            window.vertex_count()
        )));
    }
    Ok(())
}

/// `S_r^∞(center)`: vertices at distance `r` from `center` with a path to the
/// window boundary meeting `B_r(center)` only at its start.
///
/// Requires `dist(center) + 2r <= W`.
pub fn exposed_sphere(window: &GraphWindow, center: usize, r: u32) -> Result<VertexSet> {
    check_vertex(window, center)?;
    if r == 0 {
        return Ok(VertexSet::single(center));
    }
    if window.dist(center) + 2 * r > window.radius() {
        return Err(Error::Margin(format!(
            "exposed sphere of radius {r} around a vertex at distance {} needs W >= {}, have {}",
            window.dist(center),
            window.dist(center) + 2 * r,
            window.radius()
        )));
    }
    let ball = window.local_ball(center, r);
    let mut in_ball = vec![false; window.vertex_count()];
    for &v in &ball.vertices {
        in_ball[v] = true;
    }
    let outside = reach_boundary(window, |v| in_ball[v]);
    let start = ball.prefix_len(r - 1);
    let exposed = ball.vertices[start..]
        .iter()
        .copied()
        .filter(|&y| window.neighbors(y).iter().any(|&(v, _)| outside[v as usize]))
        .collect();
    Ok(exposed)
}

/// Vertices joined to the window boundary by a path avoiding `blocked`.
pub(crate) fn reach_boundary(window: &GraphWindow, blocked: impl Fn(usize) -> bool) -> Vec<bool> {
    let sources: Vec<usize> = window.sphere(window.radius()).collect();
    window.bfs(&sources, UNREACHED, blocked).into_iter().map(|d| d != UNREACHED).collect()
}

/// `A(n, m)`: the union of `B_m(x)` over `x` in `S_n^∞`.
pub fn annulus(window: &GraphWindow, n: u32, m: u32) -> Result<VertexSet> {
    if n + m > window.radius() {
        return Err(Error::Margin(format!("annulus A({n}, {m}) needs n + m <= W = {}", window.radius())));
    }
    let sphere = exposed_sphere(window, window.origin(), n)?;
    thicken(window, &sphere, m)
}

/// Union of `B_m(x)` over `x` in `set`.
fn thicken(window: &GraphWindow, set: &VertexSet, m: u32) -> Result<VertexSet> {
    let dist = window.bfs(set.as_slice(), m, |_| false);
    Ok((0..window.vertex_count()).filter(|&v| dist[v] != UNREACHED).collect())
}

/// Whether removing `S_r^∞` cuts `B_r` off from the sphere of radius `2r`.
///
/// Requires `2r < W`.
pub fn verify_sphere_separation(window: &GraphWindow, r: u32) -> Result<bool> {
    if r == 0 {
        return Ok(true);
    }
    if 2 * r >= window.radius() {
        return Err(Error::Margin(format!("sphere separation at r = {r} needs 2r < W = {}", window.radius())));
    }
    let exposed = exposed_sphere(window, window.origin(), r)?;
    let blocked = exposed.mask(window.vertex_count());
    let sources: Vec<usize> = (0..window.ball_size(r)).filter(|&v| !blocked[v]).collect();
    let dist = window.bfs(&sources, UNREACHED, |v| blocked[v]);
    Ok((0..window.vertex_count()).all(|v| dist[v] == UNREACHED || window.dist(v) < 2 * r))
}

/// BFS tree from `x` (parents in generator order) avoiding `blocked`, with
/// the visit order.
fn parents(window: &GraphWindow, x: usize, blocked: &dyn Fn(usize) -> bool) -> (Vec<u32>, Vec<usize>) {
    let mut parent = vec![UNREACHED; window.vertex_count()];
    parent[x] = x as u32;
    let mut queue = vec![x];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &(v, _) in window.neighbors(u) {
            let v = v as usize;
            if parent[v] == UNREACHED && !blocked(v) {
                parent[v] = u as u32;
                queue.push(v);
            }
        }
    }
    (parent, queue)
}

fn trace_back(parent: &[u32], x: usize, y: usize) -> Vec<usize> {
    let mut path = vec![y];
    let mut v = y;
    while v != x {
        v = parent[v] as usize;
        path.push(v);
    }
    path.reverse();
    path
}

/// A shortest path from `x` to `y` in the window.
///
/// Deterministic: the path follows the BFS tree from `x`, whose parents are
/// discovered in generator order.
pub fn geodesic(window: &GraphWindow, x: usize, y: usize) -> Result<PathSpec> {
    check_vertex(window, x)?;
    check_vertex(window, y)?;
    let (parent, _) = parents(window, x, &|_| false);
    Ok(PathSpec::from_trusted(trace_back(&parent, x, y)))
}

/// `B_n(γ)`: the union of `B_n(γ_i)`.
pub fn corridor(window: &GraphWindow, path: &PathSpec, n: u32) -> Result<VertexSet> {
    for &v in path.vertices() {
        check_vertex(window, v)?;
        if window.dist(v) + n > window.radius() {
            return Err(Error::Margin(format!(
                "corridor of thickness {n} around a vertex at distance {} leaves the window of radius {}",
                window.dist(v),
                window.radius()
            )));
        }
    }
    let dist = window.bfs(path.vertices(), n, |_| false);
    Ok((0..window.vertex_count()).filter(|&v| dist[v] != UNREACHED).collect())
}

/// Greedy family of paths from `B_n` to the window boundary, pairwise at
/// distance at least `a`.
///
/// Start vertices are tried in index order; each accepted ray is a shortest
/// path avoiding the `(a-1)`-neighbourhood of the rays already chosen.
pub fn disjoint_ray_family(window: &GraphWindow, n: u32, a: u32) -> Result<Vec<PathSpec>> {
    if a == 0 {
        return Err(Error::InvalidInput("ray spacing must be at least 1".into()));
    }
    if 2 * n > window.radius() {
        return Err(Error::Margin(format!("ray family from B_{n} needs n <= W/2, W = {}", window.radius())));
    }
    let w = window.radius();
    let mut blocked = vec![false; window.vertex_count()];
    let mut rays = Vec::new();
    for start in 0..window.ball_size(n) {
        if blocked[start] {
            continue;
        }
        let (parent, order) = parents(window, start, &|v| blocked[v]);
        let Some(&end) = order.iter().find(|&&v| window.dist(v) == w) else {
            continue;
        };
        let path = trace_back(&parent, start, end);
        let near = window.bfs(&path, a - 1, |_| false);
        for (v, d) in near.into_iter().enumerate() {
            if d != UNREACHED {
                blocked[v] = true;
            }
        }
        rays.push(PathSpec::from_trusted(path));
    }
    Ok(rays)
}

/// Pairwise window distances between the vertices of `set`, row by row.
pub(crate) fn distance_matrix(window: &GraphWindow, set: &[usize]) -> Vec<Vec<u32>> {
    set.iter()
        .map(|&s| {
            let d = window.bfs(&[s], UNREACHED, |_| false);
            set.iter().map(|&t| d[t]).collect()
        })
        .collect()
}

/// Largest window distance between two vertices of `set` (0 when `|set| <= 1`).
pub fn diameter(window: &GraphWindow, set: &VertexSet) -> u32 {
    distance_matrix(window, set.as_slice()).iter().flatten().copied().max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnulusPathReport {
    pub n: u32,
    pub k: u32,
    /// Longest shortest path between two exposed-sphere vertices inside `A(n, 2k)`.
    pub max_length: u32,
    /// `3k |B_{3n}| / |B_k|`.
    pub bound: f64,
    pub pairs: usize,
    /// Some pair could not be joined inside the thickened sphere.
    pub disconnected: bool,
}

/// Joins every pair of `S_n^∞` by a shortest path inside its
/// `2k`-neighbourhood and compares the longest one with `3k|B_{3n}|/|B_k|`.
///
/// Requires `1 <= k <= n` and `3n <= W`.
pub fn annulus_path_lengths(window: &GraphWindow, n: u32, k: u32) -> Result<AnnulusPathReport> {
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("annulus paths need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if 3 * n > window.radius() {
        return Err(Error::Margin(format!("annulus paths at n = {n} need 3n <= W = {}", window.radius())));
    }
    let sphere = exposed_sphere(window, window.origin(), n)?;
    let region = annulus(window, n, 2 * k)?.mask(window.vertex_count());
    let mut max_length = 0;
    let mut disconnected = false;
    for x in sphere.iter() {
        let d = window.bfs(&[x], UNREACHED, |v| !region[v]);
        for y in sphere.iter() {
            if d[y] == UNREACHED {
                disconnected = true;
            } else {
                max_length = max_length.max(d[y]);
            }
        }
    }
    let bound = 3.0 * k as f64 * window.ball_size(3 * n) as f64 / window.ball_size(k) as f64;
    Ok(AnnulusPathReport { n, k, max_length, bound, pairs: sphere.len() * sphere.len(), disconnected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_group, build_window, GroupSpec};

    fn z2(w: u32) -> GraphWindow {
        build_window(&build_group(&GroupSpec::square_lattice()).unwrap(), w).unwrap()
    }

    fn heis(w: u32) -> GraphWindow {
        build_window(&build_group(&GroupSpec::Heisenberg).unwrap(), w).unwrap()
    }

    fn at(w: &GraphWindow, x: i64, y: i64) -> usize {
        w.vertex_of(&[x, y]).unwrap()
    }

    /// Oracle: y is exposed iff a depth-first search from y that never
    /// re-enters the ball reaches the boundary. One search per vertex.
    fn exposed_by_path_search(w: &GraphWindow, r: u32) -> Vec<usize> {
        fn dfs(w: &GraphWindow, u: usize, r: u32, on: &mut Vec<bool>) -> bool {
            if w.dist(u) == w.radius() {
                return true;
            }
            for &(v, _) in w.neighbors(u) {
                let v = v as usize;
                if !on[v] && w.dist(v) > r {
                    on[v] = true;
                    if dfs(w, v, r, on) {
                        return true;
                    }
                }
            }
            false
        }
        w.sphere(r)
            .filter(|&y| {
                let mut on = vec![false; w.vertex_count()];
                on[y] = true;
                dfs(w, y, r, &mut on)
            })
            .collect()
    }

    #[test]
    fn exposed_spheres_on_z2_are_full() {
        let w = z2(8);
        for r in 0..=4 {
            let s = exposed_sphere(&w, 0, r).unwrap();
            assert_eq!(s.as_slice(), w.sphere(r).collect::<Vec<_>>().as_slice(), "r = {r}");
        }
        assert_eq!(exposed_by_path_search(&w, 2), w.sphere(2).collect::<Vec<_>>());
        assert!(matches!(exposed_sphere(&w, 0, 8), Err(Error::Margin(_))));
        assert_eq!(exposed_sphere(&w, 5, 0).unwrap(), VertexSet::single(5));
    }

    #[test]
    fn exposed_sphere_matches_path_search_on_heisenberg() {
        let w = heis(6);
        for r in 1..=3 {
            let s = exposed_sphere(&w, 0, r).unwrap();
            assert_eq!(s.as_slice(), exposed_by_path_search(&w, r).as_slice(), "r = {r}");
        }
    }

    #[test]
    fn annulus_cases() {
        let w = z2(8);
        assert_eq!(annulus(&w, 3, 0).unwrap(), exposed_sphere(&w, 0, 3).unwrap());
        assert_eq!(annulus(&w, 0, 2).unwrap(), VertexSet::ball(&w, 2));
        let a = annulus(&w, 3, 1).unwrap();
        assert!(VertexSet::sphere(&w, 3).is_subset(&a));
        let mask = a.mask(w.vertex_count());
        let d = w.bfs(&[a.as_slice()[0]], UNREACHED, |v| !mask[v]);
        assert!(a.iter().all(|v| d[v] != UNREACHED));
        assert!(annulus(&w, 5, 4).is_err());
    }

    #[test]
    fn sphere_separation() {
        assert!(verify_sphere_separation(&z2(8), 2).unwrap());
        assert!(verify_sphere_separation(&heis(8), 2).unwrap());
        assert!(verify_sphere_separation(&z2(3), 0).unwrap());
        assert!(verify_sphere_separation(&z2(4), 2).is_err());
    }

    #[test]
    fn geodesics() {
        let w = z2(4);
        let g = geodesic(&w, 0, at(&w, 2, 0)).unwrap();
        assert_eq!(g.length(), 2);
        assert_eq!((g.start(), g.end()), (0, at(&w, 2, 0)));
        assert_eq!(geodesic(&w, 3, 3).unwrap().length(), 0);
        let h = heis(4);
        let xy = h.group().evaluate_word(&[0, 1]);
        let v = h.vertex_of(&xy).unwrap();
        assert_eq!(geodesic(&h, 0, v).unwrap().length() as u32, h.dist(v));
        for v in 0..h.vertex_count() {
            let g = geodesic(&h, 0, v).unwrap();
            assert_eq!(g.length() as u32, h.dist(v));
            PathSpec::new(&h, g.vertices().to_vec()).unwrap();
        }
    }

    #[test]
    fn corridors() {
        let w = z2(8);
        let single = PathSpec::new(&w, vec![0]).unwrap();
        assert_eq!(corridor(&w, &single, 2).unwrap(), VertexSet::ball(&w, 2));
        let line: Vec<usize> = (0..4).map(|i| at(&w, i, 0)).collect();
        let path = PathSpec::new(&w, line.clone()).unwrap();
        assert_eq!(corridor(&w, &path, 0).unwrap().as_slice(), VertexSet::from_unsorted(line).as_slice());
        // four vertices in a row: 4 + 2 * 4 + 2 = 14
        assert_eq!(corridor(&w, &path, 1).unwrap().len(), 14);
        let five: Vec<usize> = (0..5).map(|i| at(&w, i, 0)).collect();
        assert_eq!(corridor(&w, &PathSpec::new(&w, five).unwrap(), 1).unwrap().len(), 17);
        let edge = PathSpec::new(&w, vec![at(&w, 7, 0), at(&w, 8, 0)]).unwrap();
        assert!(corridor(&w, &edge, 1).is_err());
    }

    #[test]
    fn ray_families() {
        let w = z2(16);
        let rays = disjoint_ray_family(&w, 8, 2).unwrap();
        assert!(rays.len() >= 4, "{}", rays.len());
        for (i, a) in rays.iter().enumerate() {
            assert!(w.dist(a.start()) <= 8);
            assert_eq!(w.dist(a.end()), 16);
            for b in &rays[i + 1..] {
                for &u in a.vertices() {
                    let d = w.bfs(&[u], 1, |_| false);
                    assert!(b.vertices().iter().all(|&v| d[v] == UNREACHED));
                }
            }
        }
        assert!(disjoint_ray_family(&z2(4), 1, 9).unwrap().len() <= 1);
        assert!(!disjoint_ray_family(&z2(4), 0, 1).unwrap().is_empty());
        assert!(disjoint_ray_family(&z2(4), 0, 0).is_err());
    }

    #[test]
    fn annulus_paths_within_bound() {
        for w in [z2(12), heis(6)] {
            let rep = annulus_path_lengths(&w, 2, 2).unwrap();
            assert!(!rep.disconnected);
            assert!((rep.max_length as f64) <= rep.bound, "{rep:?}");
        }
    }
}
