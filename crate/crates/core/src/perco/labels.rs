//! Per-edge uniform labels and the monotone coupling built on them.
//!
//! # Frozen label scheme (`polyperc/edge/v1`)
//!
//! For an edge with canonical key `K` (the two fixed-width vertex keys,
//! lexicographically smaller first), let `D` be the first eight bytes of
//! `SHA-256("polyperc/edge/v1" || K)` read as a little-endian `u64`.
//! The label of that edge under `(seed, replica)` is obtained from
//!
//! ```text
//! out = Philox4x32-10(counter = [D_lo, D_hi, replica_lo, replica_hi],
//!                     key     = [seed_lo, seed_hi])
//! u   = (out[0] << 32) | out[1]
//! label = (u >> 11) * 2^-53          // uniform on [0, 1)
//! ```
//!
//! where `_lo`/`_hi` are the low and high 32-bit halves. Labels depend on
//! the edge only through its key, so nested windows agree on shared edges.
//! An edge is open at parameter `p` iff `label <= p`.

use super::philox::philox4x32_10;
use crate::cayley::GraphWindow;

/// Source of per-edge labels in `[0, 1)`.
pub trait Labels: Sync {
    fn label(&self, edge: usize) -> f64;

    /// The configuration `ω_p` induced by these labels.
    fn at(&self, p: f64) -> Config<&Self>
    where
        Self: Sized,
    {
        Config::new(self, p)
    }
}

impl<L: Labels + ?Sized> Labels for &L {
    #[inline]
    fn label(&self, edge: usize) -> f64 {
        (**self).label(edge)
    }
}

/// Open/closed status of window edges.
pub trait EdgeStates: Sync {
    fn is_open(&self, edge: usize) -> bool;
}

impl<S: EdgeStates + ?Sized> EdgeStates for &S {
    #[inline]
    fn is_open(&self, edge: usize) -> bool {
        (**self).is_open(edge)
    }
}

/// Label of an edge with key digest `digest`.
#[inline]
pub fn label_from_digest(seed: u64, replica: u64, digest: u64) -> f64 {
    let out = philox4x32_10(
        [digest as u32, (digest >> 32) as u32, replica as u32, (replica >> 32) as u32],
        [seed as u32, (seed >> 32) as u32],
    );
    let u = (u64::from(out[0]) << 32) | u64::from(out[1]);
    (u >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Labels of one replica, computed on demand from the window's edge keys.
#[derive(Clone, Copy, Debug)]
pub struct LabelField<'w> {
    window: &'w GraphWindow,
    seed: u64,
    replica: u64,
}

pub fn label_field(window: &GraphWindow, seed: u64, replica: u64) -> LabelField<'_> {
    LabelField { window, seed, replica }
}

impl<'w> LabelField<'w> {
    pub fn window(&self) -> &'w GraphWindow {
        self.window
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn replica(&self) -> u64 {
        self.replica
    }

    /// All labels, indexed by edge.
    pub fn materialize(&self) -> LabelTable {
        LabelTable((0..self.window.edge_count()).map(|e| self.label(e)).collect())
    }
}

impl Labels for LabelField<'_> {
    #[inline]
    fn label(&self, edge: usize) -> f64 {
        label_from_digest(self.seed, self.replica, self.window.edge_digest(edge))
    }
}

/// Labels stored explicitly, one per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelTable(pub Vec<f64>);

impl Labels for LabelTable {
    #[inline]
    fn label(&self, edge: usize) -> f64 {
        self.0[edge]
    }
}

/// `ω_p`: edge open iff its label is at most `p`.
#[derive(Clone, Copy, Debug)]
pub struct Config<L> {
    labels: L,
    p: f64,
}

impl<L: Labels> Config<L> {
    pub fn new(labels: L, p: f64) -> Self {
        Config { labels, p }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn labels(&self) -> &L {
        &self.labels
    }

    /// The open set as an explicit table.
    pub fn snapshot(&self, edge_count: usize) -> OpenSet {
        OpenSet((0..edge_count).map(|e| self.is_open(e)).collect())
    }
}

impl<L: Labels> EdgeStates for Config<L> {
    #[inline]
    fn is_open(&self, edge: usize) -> bool {
        self.labels.label(edge) <= self.p
    }
}

/// Explicit configuration: `true` means open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSet(pub Vec<bool>);

impl OpenSet {
    /// Configuration whose open edges are the set bits of `mask`.
    pub fn from_mask(mask: u64, edge_count: usize) -> Self {
        OpenSet((0..edge_count).map(|e| mask >> e & 1 == 1).collect())
    }
}

impl EdgeStates for OpenSet {
    #[inline]
    fn is_open(&self, edge: usize) -> bool {
        self.0[edge]
    }
}
