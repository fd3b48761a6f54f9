//! Edge-by-edge exploration of a cluster in a ball and the meeting-edge set.
//!
//! The exploration from `x` inside `B_m` repeatedly reveals the smallest
//! (by window edge index) unexplored edge of `B_m` that has an endpoint in
//! the current cluster of `x`, and stops when no such edge remains. Along the
//! way it tracks `X_t = Σ_{k<=t} (p·1{e_k closed} - (1-p)·1{e_k open})`,
//! which ends at `h(C) = p|closed(C)| - (1-p)|open(C)|`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::cayley::GraphWindow;
use crate::error::{Error, Result};
use crate::geometry::VertexSet;
use crate::perco::{Config, EdgeStates, Labels, UnionFind};

#[derive(Clone, Debug)]
pub struct ExplorationTrace {
    p: f64,
    /// Explored edges in order, with their status (`true` = open).
    steps: Vec<(usize, bool)>,
    /// `X_1, ..., X_T`.
    x: Vec<f64>,
    cluster: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceSummary {
    pub stop_time: usize,
    pub x_final: f64,
    pub volume: usize,
}

impl ExplorationTrace {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn steps(&self) -> &[(usize, bool)] {
        &self.steps
    }

    /// `T`, the number of explored edges.
    pub fn stop_time(&self) -> usize {
        self.steps.len()
    }

    /// `X_{min(t, T)}`, with `X_0 = 0`.
    pub fn x_at(&self, t: usize) -> f64 {
        match t.min(self.x.len()) {
            0 => 0.0,
            s => self.x[s - 1],
        }
    }

    /// `X_T = h(C)`.
    pub fn x_final(&self) -> f64 {
        self.x_at(self.x.len())
    }

    /// `max_{k <= t} X_k^2` along the stopped walk.
    pub fn max_square_up_to(&self, t: usize) -> f64 {
        self.x[..t.min(self.x.len())].iter().map(|v| v * v).fold(0.0, f64::max)
    }

    /// `O_T`, sorted.
    pub fn open_edges(&self) -> Vec<usize> {
        self.edges_with(true)
    }

    /// `C_T`, sorted.
    pub fn closed_edges(&self) -> Vec<usize> {
        self.edges_with(false)
    }

    fn edges_with(&self, open: bool) -> Vec<usize> {
        let mut e: Vec<usize> = self.steps.iter().filter(|s| s.1 == open).map(|s| s.0).collect();
        e.sort_unstable();
        e
    }

    /// Vertex set of the explored cluster.
    pub fn cluster(&self) -> &VertexSet {
        &self.cluster
    }

    /// `h(C) = p|closed(C)| - (1-p)|open(C)|`, from the edge counts.
    pub fn h(&self) -> f64 {
        let open = self.steps.iter().filter(|s| s.1).count() as f64;
        let closed = self.steps.len() as f64 - open;
        self.p * closed - (1.0 - self.p) * open
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary { stop_time: self.stop_time(), x_final: self.x_final(), volume: self.cluster.len() }
    }
}

fn check_ball(window: &GraphWindow, m: u32) -> Result<()> {
    if m >= window.radius() {
        return Err(Error::Margin(format!("B_{m} needs m < W = {}", window.radius())));
    }
    Ok(())
}

/// Explores the cluster of `x` inside `B_m` (around the origin). Requires `m <= W`.
pub fn explore_cluster<L: Labels>(
    window: &GraphWindow,
    config: &Config<L>,
    m: u32,
    x: usize,
) -> Result<ExplorationTrace> {
    if m > window.radius() {
        return Err(Error::Margin(format!("B_{m} exceeds the window of radius {}", window.radius())));
    }
    let len = window.ball_size(m);
    if x >= len {
        return Err(Error::InvalidInput(format!("start vertex {x} is outside B_{m}")));
    }
    let mut explored = vec![false; window.edge_count()];
    let mut in_cluster = vec![false; len];
    Ok(explore_from(window, config, len, x, &mut explored, &mut in_cluster))
}

fn explore_from<L: Labels>(
    window: &GraphWindow,
    config: &Config<L>,
    len: usize,
    x: usize,
    explored: &mut [bool],
    in_cluster: &mut [bool],
) -> ExplorationTrace {
    let p = config.p();
    let mut frontier = BinaryHeap::new();
    let push_edges = |v: usize, frontier: &mut BinaryHeap<Reverse<u32>>, explored: &[bool]| {
        for &(u, e) in window.neighbors(v) {
            if (u as usize) < len && !explored[e as usize] {
                frontier.push(Reverse(e));
            }
        }
    };
    in_cluster[x] = true;
    let mut cluster = vec![x];
    push_edges(x, &mut frontier, explored);
    let mut steps = Vec::new();
    let mut xs = Vec::new();
    let mut running = 0.0;
    while let Some(Reverse(e)) = frontier.pop() {
        let e = e as usize;
        if explored[e] {
            continue;
        }
        explored[e] = true;
        let open = config.is_open(e);
        steps.push((e, open));
        if open {
            running -= 1.0 - p;
            let (a, b) = window.endpoints(e);
            for v in [a, b] {
                if !in_cluster[v] {
                    in_cluster[v] = true;
                    cluster.push(v);
                    push_edges(v, &mut frontier, explored);
                }
            }
        } else {
            running += p;
        }
        xs.push(running);
    }
    ExplorationTrace { p, steps, x: xs, cluster: VertexSet::from_unsorted(cluster) }
}

/// Union-find of the open clusters of the prefix `B_m`, and which vertices
/// lie in a cluster reaching distance `m`.
fn ball_clusters<S: EdgeStates>(window: &GraphWindow, states: &S, m: u32) -> (UnionFind, Vec<bool>) {
    let len = window.ball_size(m);
    let mut uf = UnionFind::new(len);
    for u in 0..len {
        for &(v, e) in window.neighbors(u) {
            let v = v as usize;
            if v > u && v < len && states.is_open(e as usize) {
                uf.union(u, v);
            }
        }
    }
    let mut root_touches = vec![false; len];
    for v in window.sphere(m) {
        let r = uf.find(v);
        root_touches[r] = true;
    }
    let touches = (0..len).map(|v| root_touches[uf.find(v)]).collect();
    (uf, touches)
}

/// `H`: closed edges of `B_m` whose endpoints lie in distinct clusters of
/// `B_m` that both reach distance `m`. Sorted edge indices. Requires `m < W`.
pub fn meeting_edges<S: EdgeStates>(window: &GraphWindow, states: &S, m: u32) -> Result<Vec<usize>> {
    check_ball(window, m)?;
    let (mut uf, touches) = ball_clusters(window, states, m);
    let len = window.ball_size(m);
    let mut h = Vec::new();
    for u in 0..len {
        for &(v, e) in window.neighbors(u) {
            let v = v as usize;
            if v > u && v < len && !states.is_open(e as usize) && touches[u] && touches[v] && !uf.same(u, v) {
                h.push(e as usize);
            }
        }
    }
    h.sort_unstable();
    Ok(h)
}

/// Both sides of the two counting identities over the boundary clusters of `B_m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountingIdentity {
    /// `Σ_C |open(C)|`, from explorations.
    pub lhs_open: usize,
    /// `|open(C̄)|`, counted directly.
    pub rhs_open: usize,
    /// `Σ_C |closed(C)|`, from explorations.
    pub lhs_closed: usize,
    /// `|closed(C̄)| + |H|`, counted directly.
    pub rhs_closed: usize,
    /// `|closed(C̄)|`.
    pub closed_bar: usize,
    pub h_size: usize,
    /// `Σ_C h(C)`.
    pub h_sum: f64,
    pub clusters: usize,
}

impl CountingIdentity {
    pub fn holds(&self) -> bool {
        self.lhs_open == self.rhs_open && self.lhs_closed == self.rhs_closed
    }
}

/// Evaluates both identities on one configuration. Requires `m < W`.
pub fn counting_identity_check<L: Labels>(
    window: &GraphWindow,
    config: &Config<L>,
    m: u32,
) -> Result<CountingIdentity> {
    check_ball(window, m)?;
    let len = window.ball_size(m);
    let (mut uf, touches) = ball_clusters(window, config, m);

    let mut explored = vec![false; window.edge_count()];
    let mut in_cluster = vec![false; len];
    let (mut lhs_open, mut lhs_closed, mut h_sum, mut clusters) = (0, 0, 0.0, 0);
    for x in 0..len {
        if touches[x] && !in_cluster[x] {
            // explored flags are per cluster; clusters only share closed edges
            let trace = explore_from(window, config, len, x, &mut explored, &mut in_cluster);
            for &(e, _) in trace.steps() {
                explored[e] = false;
            }
            let open = trace.steps().iter().filter(|s| s.1).count();
            lhs_open += open;
            lhs_closed += trace.stop_time() - open;
            h_sum += trace.x_final();
            clusters += 1;
        }
    }

    let (mut rhs_open, mut closed_bar, mut h_size) = (0, 0, 0);
    for u in 0..len {
        for &(v, e) in window.neighbors(u) {
            let v = v as usize;
            if v > u && v < len {
                let adjacent = touches[u] || touches[v];
                if config.is_open(e as usize) {
                    rhs_open += usize::from(adjacent);
                } else {
                    closed_bar += usize::from(adjacent);
                    h_size += usize::from(touches[u] && touches[v] && !uf.same(u, v));
                }
            }
        }
    }
    Ok(CountingIdentity {
        lhs_open,
        rhs_open,
        lhs_closed,
        rhs_closed: closed_bar + h_size,
        closed_bar,
        h_size,
        h_sum,
        clusters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_group, build_window, GroupSpec};
    use crate::perco::{clusters_in, label_field, LabelTable};

    fn z2(w: u32) -> GraphWindow {
        build_window(&build_group(&GroupSpec::square_lattice()).unwrap(), w).unwrap()
    }

    fn constant(w: &GraphWindow, label: f64) -> LabelTable {
        LabelTable(vec![label; w.edge_count()])
    }

    #[test]
    fn exploration_extremes() {
        let w = z2(6);
        let closed = constant(&w, 0.5);
        let t = explore_cluster(&w, &closed.at(0.0), 3, 0).unwrap();
        assert_eq!(t.stop_time(), 4);
        assert_eq!(t.x_final(), 0.0 * 4.0);
        let t = explore_cluster(&w, &closed.at(0.3), 3, 0).unwrap();
        assert!((t.x_final() - 0.3 * 4.0).abs() < 1e-12);
        // a corner of B_3 has two region edges
        let corner = w.vertex_of(&[3, 0]).unwrap();
        assert_eq!(explore_cluster(&w, &closed.at(0.3), 3, corner).unwrap().stop_time(), 1);

        let open = constant(&w, 0.0);
        let t = explore_cluster(&w, &open.at(1.0), 3, 0).unwrap();
        let region_edges = crate::cayley::ball_edge_count(&w, 3);
        assert_eq!(t.stop_time(), region_edges);
        assert_eq!(t.x_final(), 0.0);
        assert_eq!(t.cluster().len(), w.ball_size(3));
        assert!(explore_cluster(&w, &open.at(1.0), 3, w.ball_size(3)).is_err());
    }

    #[test]
    fn exploration_matches_union_find() {
        let w = z2(6);
        let region = VertexSet::ball(&w, 4);
        for rep in 0..300 {
            let lf = label_field(&w, 11, rep);
            let cfg = lf.at(0.5);
            let dec = clusters_in(&w, &cfg, &region);
            let x = (rep as usize * 7) % region.len();
            let t = explore_cluster(&w, &cfg, 4, x).unwrap();
            assert_eq!(*t.cluster(), dec.members(dec.cluster_of(x).unwrap()));
            assert!((t.x_final() - t.h()).abs() < 1e-9);
            // edges come out in increasing order while the frontier only grows
            let open = t.open_edges().len();
            assert_eq!(open + t.closed_edges().len(), t.stop_time());
        }
    }

    #[test]
    fn meeting_edge_fixture() {
        // B_1 of Z^2 inside W = 2: open (0,0)-(1,0) only; (0,1), (-1,0), (0,-1)
        // are singletons on the sphere, (1,0) joins the origin. Closed edges of
        // B_1 all join the origin cluster to one singleton: three edges of H.
        let w = z2(2);
        let mut open = vec![false; w.edge_count()];
        open[w.edge_between(0, w.vertex_of(&[1, 0]).unwrap()).unwrap()] = true;
        let cfg = crate::perco::OpenSet(open);
        assert_eq!(meeting_edges(&w, &cfg, 1).unwrap().len(), 3);
        // three open edges: the only closed edge joins {o, three neighbours}
        // to the remaining singleton, both on the sphere
        let mut open = vec![true; w.edge_count()];
        let last = w.edge_between(0, w.vertex_of(&[0, -1]).unwrap()).unwrap();
        open[last] = false;
        assert_eq!(meeting_edges(&w, &crate::perco::OpenSet(open), 1).unwrap(), vec![last]);
        // all closed: the origin cluster {o} does not reach distance 1
        let none = crate::perco::OpenSet(vec![false; w.edge_count()]);
        assert!(meeting_edges(&w, &none, 1).unwrap().is_empty());
        let all = crate::perco::OpenSet(vec![true; w.edge_count()]);
        assert!(meeting_edges(&w, &all, 1).unwrap().is_empty());
        assert!(meeting_edges(&w, &all, 2).is_err());
    }

    #[test]
    fn identities_on_random_configs() {
        let w = z2(5);
        for rep in 0..500 {
            for p in [0.0, 0.3, 0.5, 0.8, 1.0] {
                let lf = label_field(&w, 2, rep);
                let id = counting_identity_check(&w, &lf.at(p), 4).unwrap();
                assert!(id.holds(), "{id:?}");
                let h = meeting_edges(&w, &lf.at(p), 4).unwrap().len();
                assert_eq!(id.h_size, h);
                if p == 0.0 {
                    // sphere singletons: 4 corners with one inner edge, 12 with two;
                    // no edge joins two sphere vertices of a bipartite lattice
                    assert_eq!((id.lhs_open, id.lhs_closed, id.h_size, id.clusters), (0, 28, 0, 16));
                }
                if p == 1.0 {
                    assert_eq!(id.lhs_closed, 0);
                }
            }
        }
    }
}
