use serde::{Deserialize, Serialize};

use crate::cayley::GraphWindow;
use crate::error::{Error, Result};

/// Sorted, duplicate-free set of window vertex indices.
///
/// Serialises as a JSON array of indices in window order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_unsorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn single(v: usize) -> Self {
        VertexSet(vec![v])
    }

    /// `B_r` around the origin.
    pub fn ball(window: &GraphWindow, r: u32) -> Self {
        VertexSet((0..window.ball_size(r)).collect())
    }

    /// Vertices at distance exactly `r` from the origin.
    pub fn sphere(window: &GraphWindow, r: u32) -> Self {
        VertexSet(window.sphere(r).collect())
    }

    pub fn all(window: &GraphWindow) -> Self {
        VertexSet((0..window.vertex_count()).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_unsorted(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().any(|v| large.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Membership mask over the window.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }

    pub(crate) fn check_in(&self, window: &GraphWindow) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= window.vertex_count() => Err(Error::InvalidInput(format!(
                "vertex {v} is outside the window ({} vertices)",
                window.vertex_count()
            ))),
            _ => Ok(()),
        }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

/// A path `γ = (γ_0, …, γ_ℓ)` of adjacent window vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSpec(Vec<usize>);

impl PathSpec {
    /// Checks adjacency step by step.
    pub fn new(window: &GraphWindow, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput("a path needs at least one vertex".into()));
        }
        for &v in &vertices {
            if v >= window.vertex_count() {
                return Err(Error::InvalidInput(format!("path vertex {v} outside the window")));
            }
        }
        for w in vertices.windows(2) {
            if window.edge_between(w[0], w[1]).is_none() {
                return Err(Error::InvalidInput(format!("path vertices {} and {} are not adjacent", w[0], w[1])));
            }
        }
        Ok(PathSpec(vertices))
    }

    pub(crate) fn from_trusted(vertices: Vec<usize>) -> Self {
        PathSpec(vertices)
    }

    /// First vertex `o(γ)`.
    pub fn start(&self) -> usize {
        self.0[0]
    }

    /// Last vertex `e(γ)`.
    pub fn end(&self) -> usize {
        *self.0.last().expect("paths are non-empty")
    }

    /// Number of steps.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}
