use crate::cayley::{GraphWindow, UNREACHED};
use crate::error::{Error, Result};
use crate::perco::{EdgeStates, Labels, UnionFind};

/// Union-find over the prefix `B_radius` of the window with the given edge rule.
fn prefix_union(window: &GraphWindow, radius: u32, open: impl Fn(usize, usize, usize) -> bool) -> UnionFind {
    let len = window.ball_size(radius);
    let mut uf = UnionFind::new(len);
    for u in 0..len {
        for &(v, e) in window.neighbors(u) {
            let v = v as usize;
            if v > u && v < len && open(u, v, e as usize) {
                uf.union(u, v);
            }
        }
    }
    uf
}

/// Marks the vertices of `B_outer` whose cluster reaches distance `outer`.
fn touching_boundary(window: &GraphWindow, uf: &mut UnionFind, outer: u32) -> Vec<bool> {
    let len = window.ball_size(outer);
    let mut root_touches = vec![false; len];
    for v in window.sphere(outer) {
        let r = uf.find(v);
        root_touches[r] = true;
    }
    (0..len).map(|v| root_touches[uf.find(v)]).collect()
}

/// `N_r(Y_r)`: the number of clusters of the hybrid configuration `Y_r` in
/// `B_{4n}` that meet both `B_r` and the sphere of radius `4n`.
///
/// An edge of `B_{4n}` touching `B_r` is open in `Y_r` when it is `p`-open
/// and its `p`-cluster in `B_{4n}` reaches distance `4n`; any other edge of
/// `B_{4n}` is open when it is `(p + δ)`-open.
#[allow(clippy::too_many_arguments)]
pub fn hybrid_crossing_count<L: Labels>(
    window: &GraphWindow,
    labels: &L,
    p: f64,
    delta: f64,
    r: u32,
    n: u32,
) -> Result<usize> {
    if delta < 0.0 {
        return Err(Error::InvalidInput(format!("sprinkling amount must be nonnegative, got {delta}")));
    }
    if r > 2 * n || 4 * n > window.radius() {
        return Err(Error::Margin(format!(
            "hybrid configuration needs r <= 2n and 4n <= W, got r = {r}, n = {n}, W = {}",
            window.radius()
        )));
    }
    let outer = 4 * n;
    let q = (p + delta).min(1.0);
    let mut up = prefix_union(window, outer, |_, _, e| labels.label(e) <= p);
    let live = touching_boundary(window, &mut up, outer);
    let mut uy = prefix_union(window, outer, |u, v, e| {
        let label = labels.label(e);
        if window.dist(u).min(window.dist(v)) <= r {
            label <= p && live[u]
        } else {
            label <= q
        }
    });
    let touches = touching_boundary(window, &mut uy, outer);
    let mut roots: Vec<usize> = (0..window.ball_size(r)).filter(|&v| touches[v]).map(|v| uy.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// `{∀x ∈ B_{2n}: B_k(x) ↔ ∂B_{4n}}`, with connections inside `B_{4n}`.
/// Requires `k <= 2n` and `4n <= W`.
pub fn growth_everywhere_event<S: EdgeStates>(window: &GraphWindow, states: &S, n: u32, k: u32) -> Result<bool> {
    if k > 2 * n || 4 * n > window.radius() {
        return Err(Error::Margin(format!(
            "growth event needs k <= 2n and 4n <= W, got k = {k}, n = {n}, W = {}",
            window.radius()
        )));
    }
    let outer = 4 * n;
    let mut uf = prefix_union(window, outer, |_, _, e| states.is_open(e));
    let live = touching_boundary(window, &mut uf, outer);
    let sources: Vec<usize> = (0..live.len()).filter(|&v| live[v]).collect();
    let near = window.bfs(&sources, k, |_| false);
    Ok((0..window.ball_size(2 * n)).all(|x| near[x] != UNREACHED))
}
