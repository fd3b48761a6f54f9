use std::collections::BTreeSet;

use super::labels::EdgeStates;
use super::unionfind::UnionFind;
use crate::cayley::{GraphWindow, Scratch, UNREACHED};
use crate::error::{Error, Result};
use crate::geometry::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterSummary {
    /// Smallest vertex index in the cluster.
    pub id: usize,
    pub volume: usize,
    /// Vertex at maximal distance from the root (smallest index on ties).
    pub farthest: usize,
    pub max_dist: u32,
}

/// Open clusters of a region: components of the graph on the region whose
/// edges are the open edges with both endpoints in the region.
#[derive(Clone, Debug)]
pub struct ClusterDecomposition {
    region: VertexSet,
    ids: Vec<usize>,
    clusters: Vec<ClusterSummary>,
}

impl ClusterDecomposition {
    pub fn region(&self) -> &VertexSet {
        &self.region
    }

    /// Canonical cluster id of `v`, if `v` lies in the region.
    pub fn cluster_of(&self, v: usize) -> Option<usize> {
        self.region.as_slice().binary_search(&v).ok().map(|i| self.ids[i])
    }

    /// Clusters sorted by id.
    pub fn clusters(&self) -> &[ClusterSummary] {
        &self.clusters
    }

    pub fn cluster(&self, id: usize) -> Option<&ClusterSummary> {
        self.clusters.binary_search_by_key(&id, |c| c.id).ok().map(|i| &self.clusters[i])
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Ids of the clusters that meet `set` (vertices outside the region are ignored).
    pub fn meeting(&self, set: &VertexSet) -> BTreeSet<usize> {
        set.iter().filter_map(|v| self.cluster_of(v)).collect()
    }

    /// Whether cluster `id` meets `set`.
    pub fn touches(&self, id: usize, set: &VertexSet) -> bool {
        set.iter().any(|v| self.cluster_of(v) == Some(id))
    }

    /// Members of cluster `id`.
    pub fn members(&self, id: usize) -> VertexSet {
        let members = self.region.iter().zip(&self.ids).filter(|&(_, &c)| c == id).map(|(v, _)| v).collect();
        VertexSet::from_unsorted(members)
    }
}

/// Clusters in `region`, with extents measured from the origin.
pub fn clusters_in<S: EdgeStates>(window: &GraphWindow, states: &S, region: &VertexSet) -> ClusterDecomposition {
    decompose(window, states, region, window.distances())
}

/// As [`clusters_in`], with extents measured from `root`.
pub fn clusters_in_rooted<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    region: &VertexSet,
    root: usize,
) -> ClusterDecomposition {
    let dist = window.bfs(&[root], UNREACHED, |_| false);
    decompose(window, states, region, &dist)
}

fn decompose<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    region: &VertexSet,
    dist: &[u32],
) -> ClusterDecomposition {
    let verts = region.as_slice();
    let mut scratch = Scratch::new(window.vertex_count());
    scratch.begin(window.vertex_count());
    for (i, &v) in verts.iter().enumerate() {
        scratch.set(v, i as u32);
    }
    let mut uf = union_region(window, states, verts, &scratch);

    // region is sorted, so the first vertex seen in each class is its minimum
    let mut min_of_root = vec![usize::MAX; verts.len()];
    let mut ids = Vec::with_capacity(verts.len());
    let mut clusters: Vec<ClusterSummary> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; verts.len()];
    for (i, &v) in verts.iter().enumerate() {
        let r = uf.find(i);
        if min_of_root[r] == usize::MAX {
            min_of_root[r] = v;
            slot_of_root[r] = clusters.len();
            clusters.push(ClusterSummary { id: v, volume: 0, farthest: v, max_dist: dist[v] });
        }
        let c = &mut clusters[slot_of_root[r]];
        c.volume += 1;
        if dist[v] > c.max_dist {
            c.max_dist = dist[v];
            c.farthest = v;
        }
        ids.push(min_of_root[r]);
    }
    ClusterDecomposition { region: region.clone(), ids, clusters }
}

/// Union-find over `verts` (positions as recorded in `pos`) joined by open
/// edges with both endpoints present.
pub(crate) fn union_region<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    verts: &[usize],
    pos: &Scratch,
) -> UnionFind {
    let mut uf = UnionFind::new(verts.len());
    for (i, &u) in verts.iter().enumerate() {
        for &(v, e) in window.neighbors(u) {
            let v = v as usize;
            if v > u {
                if let Some(j) = pos.get(v) {
                    if states.is_open(e as usize) {
                        uf.union(i, j as usize);
                    }
                }
            }
        }
    }
    uf
}

fn check_subsets(region: &VertexSet, a: &VertexSet, b: &VertexSet) -> Result<()> {
    if !a.is_subset(region) || !b.is_subset(region) {
        return Err(Error::InvalidInput("A and B must lie inside the region".into()));
    }
    Ok(())
}

/// `A` and `B` are joined by an open path inside `region`.
pub fn connected_in<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    region: &VertexSet,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<bool> {
    check_subsets(region, a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    if a.intersects(b) {
        return Ok(true);
    }
    // grow the open component of A inside the region
    let in_region = region.mask(window.vertex_count());
    let target = b.mask(window.vertex_count());
    let mut seen = a.mask(window.vertex_count());
    let mut stack: Vec<usize> = a.iter().collect();
    while let Some(u) = stack.pop() {
        for &(v, e) in window.neighbors(u) {
            let v = v as usize;
            if in_region[v] && !seen[v] && states.is_open(e as usize) {
                if target[v] {
                    return Ok(true);
                }
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    Ok(false)
}

/// Number of distinct clusters of `region` meeting both `A` and `B`.
pub fn crossing_cluster_count<S: EdgeStates>(
    window: &GraphWindow,
    states: &S,
    region: &VertexSet,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<usize> {
    check_subsets(region, a, b)?;
    let dec = clusters_in(window, states, region);
    let in_a = dec.meeting(a);
    Ok(dec.meeting(b).intersection(&in_a).count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OriginCluster {
    /// Number of vertices explored; exact unless `reached_boundary`.
    pub volume: usize,
    pub max_dist: u32,
    /// The cluster contains a vertex at distance `W`.
    pub reached_boundary: bool,
}

/// Explores the open cluster of the origin inside the window, stopping as
/// soon as it touches the window boundary.
pub fn origin_cluster<S: EdgeStates>(window: &GraphWindow, states: &S) -> OriginCluster {
    let w = window.radius();
    if w == 0 {
        return OriginCluster { volume: 1, max_dist: 0, reached_boundary: true };
    }
    let mut seen = vec![false; window.vertex_count()];
    seen[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    let mut max_dist = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &(v, e) in window.neighbors(u) {
            let v = v as usize;
            if !seen[v] && states.is_open(e as usize) {
                seen[v] = true;
                let d = window.dist(v);
                max_dist = max_dist.max(d);
                if d == w {
                    return OriginCluster { volume: queue.len() + 1, max_dist, reached_boundary: true };
                }
                queue.push(v);
            }
        }
    }
    OriginCluster { volume: queue.len(), max_dist, reached_boundary: false }
}
