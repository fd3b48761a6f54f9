use std::collections::HashMap;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::group::{Element, GroupModel};
use crate::error::{Error, Result};

/// Default cap on the number of vertices a window may hold.
pub const DEFAULT_VERTEX_CAP: usize = 4_000_000;

/// Sentinel distance for vertices not reached by a search.
pub const UNREACHED: u32 = u32::MAX;

/// The ball of radius `W` around the identity, as an induced subgraph.
///
/// Vertices are numbered in BFS discovery order (index 0 is the origin),
/// neighbours are visited in generator order. Adjacency is stored in CSR
/// form; edges are numbered in order of their first appearance when
/// scanning vertices by index and neighbours by generator.
#[derive(Clone, Debug)]
pub struct GraphWindow {
    group: Arc<GroupModel>,
    radius: u32,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    dist: Vec<u32>,
    layer_start: Vec<usize>,
    adj_start: Vec<usize>,
    adj: Vec<(u32, u32)>,
    edges: Vec<(u32, u32)>,
    edge_digest: Vec<u64>,
}

/// Builds the window of radius `radius` with the default vertex cap.
pub fn build_window(group: &GroupModel, radius: u32) -> Result<GraphWindow> {
    build_window_with_cap(group, radius, DEFAULT_VERTEX_CAP)
}

pub fn build_window_with_cap(group: &GroupModel, radius: u32, cap: usize) -> Result<GraphWindow> {
    let group = Arc::new(group.clone());
    let identity = group.identity();
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);
    let mut dist = vec![0u32];
    let mut head = 0;
    while head < elements.len() {
        let d = dist[head];
        if d < radius {
            for g in 0..group.degree() {
                let next = group.multiply(&elements[head], g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::Resource(format!(
                            "window of radius {radius} exceeds the cap of {cap} vertices"
                        )));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    dist.push(d + 1);
                }
            }
        }
        head += 1;
    }

    let n = elements.len();
    let mut layer_start = vec![0usize; radius as usize + 2];
    for &d in &dist {
        layer_start[d as usize + 1] += 1;
    }
    for r in 1..layer_start.len() {
        layer_start[r] += layer_start[r - 1];
    }

    // neighbours in generator order
    let mut targets: Vec<Vec<u32>> = Vec::with_capacity(n);
    for e in &elements {
        let mut row = Vec::with_capacity(group.degree());
        for g in 0..group.degree() {
            if let Some(&v) = index.get(&group.multiply(e, g)) {
                row.push(v as u32);
            }
        }
        targets.push(row);
    }

    let mut adj_start = Vec::with_capacity(n + 1);
    let mut adj: Vec<(u32, u32)> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    adj_start.push(0);
    for u in 0..n {
        for &v in &targets[u] {
            let v = v as usize;
            let e = if v > u {
                edges.push((u as u32, v as u32));
                (edges.len() - 1) as u32
            } else {
                // already created while scanning v
                let row = &adj[adj_start[v]..adj_start[v + 1]];
                row.iter()
                    .find(|&&(w, _)| w as usize == u)
                    .map(|&(_, e)| e)
                    .ok_or_else(|| Error::InvalidGroup("generating set is not symmetric".into()))?
            };
            adj.push((v as u32, e));
        }
        adj_start.push(adj.len());
    }

    let keys: Vec<Vec<u8>> = elements.iter().map(|e| group.canonical_key(e)).collect();
    let edge_digest = edges.iter().map(|&(a, b)| edge_key_digest(&keys[a as usize], &keys[b as usize])).collect();

    Ok(GraphWindow { group, radius, elements, index, dist, layer_start, adj_start, adj, edges, edge_digest })
}

/// Canonical unordered edge key: the two vertex keys, smaller first.
pub fn canonical_edge_key(a: &[u8], b: &[u8]) -> Vec<u8> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut key = Vec::with_capacity(lo.len() + hi.len());
    key.extend_from_slice(lo);
    key.extend_from_slice(hi);
    key
}

/// First eight bytes (little-endian) of SHA-256 over a domain tag and the
/// canonical edge key. Feeds the label generator; frozen.
pub fn edge_key_digest(a: &[u8], b: &[u8]) -> u64 {
    let mut h = Sha256::new();
    h.update(b"polyperc/edge/v1");
    h.update(canonical_edge_key(a, b));
    let out = h.finalize();
    u64::from_le_bytes(out[..8].try_into().expect("sha256 output has 32 bytes"))
}

impl GraphWindow {
    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    /// Radius `W` of the window.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.elements.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn origin(&self) -> usize {
        0
    }

    pub fn element_of(&self, v: usize) -> &[i64] {
        &self.elements[v]
    }

    /// Vertex index of `element`, if it lies in the window.
    pub fn vertex_of(&self, element: &[i64]) -> Option<usize> {
        self.index.get(element).copied()
    }

    /// Graph distance from the origin.
    pub fn dist(&self, v: usize) -> u32 {
        self.dist[v]
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    /// Neighbours of `v` with the connecting edge, in generator order.
    pub fn neighbors(&self, v: usize) -> &[(u32, u32)] {
        &self.adj[self.adj_start[v]..self.adj_start[v + 1]]
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Endpoints of edge `e`, lower index first.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e];
        (a as usize, b as usize)
    }

    pub fn edge_digest(&self, e: usize) -> u64 {
        self.edge_digest[e]
    }

    pub fn canonical_edge_key(&self, e: usize) -> Vec<u8> {
        let (a, b) = self.endpoints(e);
        canonical_edge_key(&self.group.canonical_key(&self.elements[a]), &self.group.canonical_key(&self.elements[b]))
    }

    /// Edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u).iter().find(|&&(w, _)| w as usize == v).map(|&(_, e)| e as usize)
    }

    /// `|B_r|` for `r <= W`.
    pub fn ball_size(&self, r: u32) -> usize {
        self.layer_start[r.min(self.radius) as usize + 1]
    }

    /// Vertices at distance exactly `r` from the origin (a contiguous index range).
    pub fn sphere(&self, r: u32) -> std::ops::Range<usize> {
        if r > self.radius {
            return 0..0;
        }
        self.layer_start[r as usize]..self.layer_start[r as usize + 1]
    }

    /// Breadth-first distances from `sources`, never entering blocked
    /// vertices and stopping at `max_dist`. Unreached vertices get [`UNREACHED`].
    pub fn bfs(&self, sources: &[usize], max_dist: u32, blocked: impl Fn(usize) -> bool) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.vertex_count()];
        let mut queue = Vec::with_capacity(sources.len());
        for &s in sources {
            if !blocked(s) && dist[s] == UNREACHED {
                dist[s] = 0;
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if dist[u] >= max_dist {
                continue;
            }
            for &(v, _) in self.neighbors(u) {
                let v = v as usize;
                if dist[v] == UNREACHED && !blocked(v) {
                    dist[v] = dist[u] + 1;
                    queue.push(v);
                }
            }
        }
        dist
    }

    /// Vertices of `B_r(center)` in BFS order with their distances from the
    /// centre. Requires `dist(center) + r <= W`, so that the ball computed
    /// inside the window is the true ball.
    pub fn ball_around(&self, center: usize, r: u32) -> Result<LocalBall> {
        if self.dist[center] + r > self.radius {
            return Err(Error::Margin(format!(
                "ball of radius {r} around a vertex at distance {} leaves the window of radius {}",
                self.dist[center], self.radius
            )));
        }
        Ok(self.local_ball(center, r))
    }

    pub(crate) fn local_ball(&self, center: usize, r: u32) -> LocalBall {
        let mut scratch = Scratch::new(self.vertex_count());
        self.local_ball_with(center, r, &mut scratch)
    }

    /// As [`GraphWindow::ball_around`] without the margin check, reusing
    /// `scratch`. On return `scratch` maps each ball vertex to its position.
    pub(crate) fn local_ball_with(&self, center: usize, r: u32, scratch: &mut Scratch) -> LocalBall {
        scratch.begin(self.vertex_count());
        if center == 0 {
            let size = self.ball_size(r);
            for v in 0..size {
                scratch.set(v, v as u32);
            }
            return LocalBall { center, radius: r, vertices: (0..size).collect(), dist: self.dist[..size].to_vec() };
        }
        let mut vertices = vec![center];
        let mut dist = vec![0];
        scratch.set(center, 0);
        let mut head = 0;
        while head < vertices.len() {
            let u = vertices[head];
            let d = dist[head];
            head += 1;
            if d >= r {
                continue;
            }
            for &(v, _) in self.neighbors(u) {
                let v = v as usize;
                if scratch.get(v).is_none() {
                    scratch.set(v, vertices.len() as u32);
                    vertices.push(v);
                    dist.push(d + 1);
                }
            }
        }
        LocalBall { center, radius: r, vertices, dist }
    }
}

/// Reusable vertex-indexed map, cleared in O(1) by bumping an epoch.
#[derive(Clone, Debug, Default)]
pub struct Scratch {
    stamp: Vec<u32>,
    value: Vec<u32>,
    epoch: u32,
}

impl Scratch {
    pub fn new(n: usize) -> Self {
        Scratch { stamp: vec![0; n], value: vec![0; n], epoch: 0 }
    }

    /// Forgets every entry; grows to hold `n` vertices if needed.
    pub fn begin(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
            self.value.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    #[inline]
    pub fn set(&mut self, v: usize, value: u32) {
        self.stamp[v] = self.epoch;
        self.value[v] = value;
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<u32> {
        (self.stamp[v] == self.epoch).then(|| self.value[v])
    }
}

/// A ball `B_r(center)` listed in BFS order.
#[derive(Clone, Debug)]
pub struct LocalBall {
    pub center: usize,
    pub radius: u32,
    /// Window indices in BFS order from the centre.
    pub vertices: Vec<usize>,
    /// Distance from the centre, parallel to `vertices`.
    pub dist: Vec<u32>,
}

impl LocalBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of leading entries at distance `<= r` from the centre.
    pub fn prefix_len(&self, r: u32) -> usize {
        self.dist.partition_point(|&d| d <= r)
    }
}
