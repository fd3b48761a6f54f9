use rayon::prelude::*;
use serde::Serialize;

use super::local_event_in;
use crate::cayley::{GraphWindow, Scratch};
use crate::error::{Error, Result};
use crate::geometry::{outer_cutset, VertexSet};
use crate::perco::{Config, Labels};

/// The site process `X(v) = 1{B_{k/10}(v) ↔ ∂B_k(v)} · 1{U_v(k/5, k/2)}`,
/// evaluated at every vertex whose `B_k(v)` fits in the window, that is on
/// the prefix `B_{W-k}`.
#[derive(Clone, Debug)]
pub struct CoarseField<'w> {
    window: &'w GraphWindow,
    k: u32,
    values: Vec<bool>,
}

impl<'w> CoarseField<'w> {
    /// Builds a field from explicit site values on `B_{W-k}`.
    pub fn from_values(window: &'w GraphWindow, k: u32, values: Vec<bool>) -> Result<Self> {
        if k > window.radius() || values.len() != window.ball_size(window.radius() - k) {
            return Err(Error::InvalidInput(format!(
                "a coarse field at k = {k} needs one value per vertex of B_(W-k)"
            )));
        }
        Ok(CoarseField { window, k, values })
    }

    pub fn window(&self) -> &'w GraphWindow {
        self.window
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Radius `W - k` of the evaluable region.
    pub fn evaluable_radius(&self) -> u32 {
        self.window.radius() - self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `X(v)`, or `None` outside the evaluable region.
    pub fn value(&self, v: usize) -> Option<bool> {
        self.values.get(v).copied()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn open_count(&self) -> usize {
        self.values.iter().filter(|&&x| x).count()
    }
}

/// Evaluates `X` at `p` on every evaluable site. Requires `10 <= k <= W`.
///
/// Sites are processed in parallel; the output does not depend on the
/// thread count.
pub fn coarse_field<'w, L: Labels>(window: &'w GraphWindow, labels: &L, p: f64, k: u32) -> Result<CoarseField<'w>> {
    if k < 10 {
        return Err(Error::InvalidInput(format!("the coarse field needs k >= 10 so that k/10 >= 1, got {k}")));
    }
    if k > window.radius() {
        return Err(Error::Margin(format!("k = {k} exceeds the window radius {}", window.radius())));
    }
    let sites = window.ball_size(window.radius() - k);
    let cfg = Config::new(labels, p);
    let values = (0..sites)
        .into_par_iter()
        .map_init(
            || Scratch::new(window.vertex_count()),
            |scratch, v| {
                let ball = window.local_ball_with(v, k, scratch);
                local_event_in(window, &cfg, &ball, scratch, k)
            },
        )
        .collect();
    Ok(CoarseField { window, k, values })
}

/// A closed minimal cutset of the coarse field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoarseCutset {
    pub vertices: VertexSet,
    pub size: usize,
    /// Size of the `X`-open component it encloses.
    pub inside: usize,
}

/// If the `X`-open component of the origin (the origin counted as open)
/// stays inside the evaluable region, the part of its exterior boundary
/// facing the outside of the region. This set is `X`-closed and a minimal
/// cutset between the origin and the sphere of radius `W - k`.
pub fn smallest_closed_coarse_cutset(field: &CoarseField<'_>) -> Option<CoarseCutset> {
    let window = field.window;
    let mut scratch = Scratch::new(window.vertex_count());
    cutset_at(field, window.origin(), field.evaluable_radius(), &mut scratch)
}

fn cutset_at(field: &CoarseField<'_>, center: usize, radius: u32, scratch: &mut Scratch) -> Option<CoarseCutset> {
    if radius == 0 {
        return None;
    }
    let ball = field.window.local_ball_with(center, radius, scratch);
    let out = outer_cutset(field.window, &ball, scratch, |v| field.value(v).unwrap_or(false))?;
    Some(CoarseCutset { size: out.cutset.len(), vertices: out.cutset, inside: out.inside })
}

/// For every site `v` with `B_radius(v)` inside the evaluable region, the size
/// of the closed coarse cutset around `v` relative to the sphere of radius
/// `radius` about `v`, if there is one. Sites are listed in index order.
pub fn coarse_cutset_sizes(field: &CoarseField<'_>, radius: u32) -> Result<Vec<Option<usize>>> {
    let w = field.evaluable_radius();
    if radius == 0 || radius > w {
        return Err(Error::Margin(format!("cutset radius {radius} must lie in [1, {w}]")));
    }
    let window = field.window;
    let centres = window.ball_size(w - radius);
    Ok((0..centres)
        .into_par_iter()
        .map_init(
            || Scratch::new(window.vertex_count()),
            |scratch, v| cutset_at(field, v, radius, scratch).map(|c| c.size),
        )
        .collect())
}
