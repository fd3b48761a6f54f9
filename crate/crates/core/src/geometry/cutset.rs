use std::collections::VecDeque;

use serde::Serialize;

use super::{distance_matrix, reach_boundary, VertexSet};
use crate::cayley::{GraphWindow, LocalBall, Scratch, UNREACHED};
use crate::error::{Error, Result};

/// A vertex set `Π` examined as a cutset between `F` and the window boundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cutset {
    pub vertices: VertexSet,
    /// Vertices reachable from `F` without crossing `Π`.
    pub separated_set: VertexSet,
    pub is_cutset: bool,
    /// No proper subset is a cutset (false when `is_cutset` is false).
    pub minimal: bool,
    /// Smallest `R'` making `Π` connected when vertices within distance `R'` are joined.
    pub r_connected_for: u32,
    pub diam: u32,
    pub diam_f: u32,
    pub size: usize,
    pub f_size: usize,
    /// Smallest distance from the origin to a vertex of `Π`.
    pub min_dist_to_origin: Option<u32>,
}

impl Cutset {
    /// `min dist(o, Π) <= R |Π|`.
    pub fn within_radius_bound(&self, r: u32) -> bool {
        self.min_dist_to_origin.is_some_and(|d| d as u64 <= r as u64 * self.size as u64)
    }

    /// `diam(Π) >= diam(F) / 2`.
    pub fn diameter_bound_holds(&self) -> bool {
        2 * self.diam >= self.diam_f
    }

    /// `|Π| >= c |F|^((d-1)/d)`.
    pub fn isoperimetric_bound_holds(&self, c: f64, d: u32) -> bool {
        self.size as f64 >= c * (self.f_size as f64).powf((d as f64 - 1.0) / d as f64)
    }
}

/// Examines `pi` as a cutset between `f` and the window boundary.
///
/// `f` must contain the origin and be disjoint from `pi`.
pub fn analyze_cutset(window: &GraphWindow, f: &VertexSet, pi: &VertexSet) -> Result<Cutset> {
    f.check_in(window)?;
    pi.check_in(window)?;
    if !f.contains(window.origin()) {
        return Err(Error::InvalidInput("F must contain the origin".into()));
    }
    if f.intersects(pi) {
        return Err(Error::InvalidInput("F and the cutset overlap".into()));
    }
    let n = window.vertex_count();
    let w = window.radius();
    let blocked = pi.mask(n);
    let from_f = window.bfs(f.as_slice(), UNREACHED, |v| blocked[v]);
    let separated: Vec<usize> = (0..n).filter(|&v| from_f[v] != UNREACHED).collect();
    let is_cutset = separated.iter().all(|&v| window.dist(v) < w);

    // Π \ {v} still cuts iff v misses the inside or the outside.
    let minimal = is_cutset && {
        let outside = reach_boundary(window, |v| blocked[v]);
        pi.iter().all(|v| {
            let nbrs = window.neighbors(v);
            let touches_inside = nbrs.iter().any(|&(u, _)| from_f[u as usize] != UNREACHED);
            let touches_outside = window.dist(v) == w || nbrs.iter().any(|&(u, _)| outside[u as usize]);
            touches_inside && touches_outside
        })
    };

    let pd = distance_matrix(window, pi.as_slice());
    let fd = distance_matrix(window, f.as_slice());
    Ok(Cutset {
        vertices: pi.clone(),
        separated_set: VertexSet::from_unsorted(separated),
        is_cutset,
        minimal,
        r_connected_for: bottleneck_spanning(&pd),
        diam: pd.iter().flatten().copied().max().unwrap_or(0),
        diam_f: fd.iter().flatten().copied().max().unwrap_or(0),
        size: pi.len(),
        f_size: f.len(),
        min_dist_to_origin: pi.iter().map(|v| window.dist(v)).min(),
    })
}

/// Largest edge of a minimum spanning tree over the distance matrix (Prim).
fn bottleneck_spanning(d: &[Vec<u32>]) -> u32 {
    let n = d.len();
    if n <= 1 {
        return 0;
    }
    let mut best = d[0].clone();
    let mut done = vec![false; n];
    done[0] = true;
    let mut worst = 0;
    for _ in 1..n {
        let (j, &dj) =
            best.iter().enumerate().filter(|&(j, _)| !done[j]).min_by_key(|&(_, &b)| b).expect("vertices remain");
        done[j] = true;
        worst = worst.max(dj);
        for k in 0..n {
            best[k] = best[k].min(d[j][k]);
        }
    }
    worst
}

/// Size of a smallest vertex set disjoint from `f` separating it from the
/// window boundary (Menger: maximum number of vertex-disjoint paths).
pub fn min_vertex_cut(window: &GraphWindow, f: &VertexSet) -> Result<usize> {
    f.check_in(window)?;
    if f.iter().any(|v| window.dist(v) == window.radius()) {
        return Err(Error::InvalidInput("F touches the window boundary".into()));
    }
    let n = window.vertex_count();
    let in_f = f.mask(n);
    let mut net = FlowNet::new(2 * n + 2);
    let (s, t) = (2 * n, 2 * n + 1);
    const INF: u32 = u32::MAX / 2;
    for v in 0..n {
        net.add(2 * v, 2 * v + 1, if in_f[v] { INF } else { 1 });
        for &(u, _) in window.neighbors(v) {
            net.add(2 * v + 1, 2 * u as usize, INF);
        }
        if in_f[v] {
            net.add(s, 2 * v, INF);
        }
        if window.dist(v) == window.radius() {
            net.add(2 * v + 1, t, INF);
        }
    }
    Ok(net.max_flow(s, t) as usize)
}

/// Edmonds-Karp over an edge list; only used on small windows.
struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0u64;
        loop {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut q = VecDeque::from([s]);
            via[s] = usize::MAX - 1;
            while let Some(u) = q.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && via[v] == usize::MAX {
                        via[v] = e;
                        q.push_back(v);
                    }
                }
            }
            if via[t] == usize::MAX {
                return total;
            }
            let mut push = u32::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            total += u64::from(push);
        }
    }
}

/// Every connected vertex set containing `root` with at most `max_size`
/// vertices, none of them on the window boundary (Redelmeier's method).
pub fn connected_sets_containing(window: &GraphWindow, root: usize, max_size: usize) -> Vec<VertexSet> {
    let n = window.vertex_count();
    let allowed = |v: usize| window.dist(v) < window.radius();
    let mut out = Vec::new();
    if max_size == 0 || !allowed(root) {
        return out;
    }
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut current = Vec::new();
    redelmeier(window, &allowed, vec![root], &mut seen, &mut current, max_size, &mut out);
    out
}

fn redelmeier(
    window: &GraphWindow,
    allowed: &dyn Fn(usize) -> bool,
    mut untried: Vec<usize>,
    seen: &mut Vec<bool>,
    current: &mut Vec<usize>,
    max_size: usize,
    out: &mut Vec<VertexSet>,
) {
    while let Some(v) = untried.pop() {
        current.push(v);
        out.push(VertexSet::from_unsorted(current.clone()));
        if current.len() < max_size {
            let mut fresh = Vec::new();
            for &(u, _) in window.neighbors(v) {
                let u = u as usize;
                if !seen[u] && allowed(u) {
                    seen[u] = true;
                    fresh.push(u);
                }
            }
            let mut next = untried.clone();
            next.extend(&fresh);
            redelmeier(window, allowed, next, seen, current, max_size, out);
            for u in fresh {
                seen[u] = false;
            }
        }
        current.pop();
    }
}

/// `min |Π| / |F|^((d-1)/d)` over connected `F ∋ o` with `|F| <= max_size`,
/// `Π` ranging over cutsets of `F`.
///
/// Needs `W > max_size` so every such `F` stays off the boundary.
pub fn isoperimetric_constant(window: &GraphWindow, d: u32, max_size: usize) -> Result<f64> {
    if d == 0 || max_size == 0 {
        return Err(Error::InvalidInput("isoperimetric constant needs d >= 1 and max_size >= 1".into()));
    }
    if (window.radius() as usize) <= max_size {
        return Err(Error::Margin(format!(
            "connected sets of size {max_size} need W > {max_size}, have {}",
            window.radius()
        )));
    }
    let exponent = (d as f64 - 1.0) / d as f64;
    let mut c = f64::INFINITY;
    for f in connected_sets_containing(window, window.origin(), max_size) {
        let cut = min_vertex_cut(window, &f)? as f64;
        c = c.min(cut / (f.len() as f64).powf(exponent));
    }
    Ok(c)
}

/// Minimal cutset around the centre of a ball, built from the open
/// component of the centre.
#[derive(Clone, Debug)]
pub(crate) struct OuterCutset {
    /// Window indices, sorted.
    pub cutset: VertexSet,
    /// Size of the open component of the centre.
    pub inside: usize,
}

/// Grows the component of the ball centre through vertices with `open`
/// (the centre counts as open). Returns `None` if it reaches the ball's
/// outer sphere; otherwise the part of its exterior boundary that faces the
/// outer sphere, which is a minimal cutset between the centre and that sphere.
///
/// `pos` must map each ball vertex to its position in `ball`.
pub(crate) fn outer_cutset(
    window: &GraphWindow,
    ball: &LocalBall,
    pos: &Scratch,
    open: impl Fn(usize) -> bool,
) -> Option<OuterCutset> {
    let len = ball.len();
    let r = ball.radius;
    // 0 = untouched, 1 = component, 2 = exterior boundary, 3 = outside
    let mut mark = vec![0u8; len];
    let mut stack = vec![0usize];
    mark[0] = 1;
    let mut inside = 0;
    while let Some(i) = stack.pop() {
        inside += 1;
        if ball.dist[i] == r {
            return None;
        }
        for &(u, _) in window.neighbors(ball.vertices[i]) {
            let Some(j) = pos.get(u as usize) else { continue };
            let j = j as usize;
            if mark[j] == 0 {
                if open(u as usize) {
                    mark[j] = 1;
                    stack.push(j);
                } else {
                    mark[j] = 2;
                }
            }
        }
    }
    let mut queue: Vec<usize> = (ball.prefix_len(r - 1)..len).filter(|&j| mark[j] == 0).collect();
    for &j in &queue {
        mark[j] = 3;
    }
    let mut head = 0;
    while head < queue.len() {
        let i = queue[head];
        head += 1;
        for &(u, _) in window.neighbors(ball.vertices[i]) {
            if let Some(j) = pos.get(u as usize) {
                let j = j as usize;
                if mark[j] == 0 {
                    mark[j] = 3;
                    queue.push(j);
                }
            }
        }
    }
    let cutset = (0..len)
        .filter(|&j| mark[j] == 2)
        .filter(|&j| {
            ball.dist[j] == r
                || window
                    .neighbors(ball.vertices[j])
                    .iter()
                    .any(|&(u, _)| pos.get(u as usize).is_some_and(|k| mark[k as usize] == 3))
        })
        .map(|j| ball.vertices[j])
        .collect();
    Some(OuterCutset { cutset, inside })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_group, build_window, GroupSpec};
    use crate::geometry::exposed_sphere;

    fn z2(w: u32) -> GraphWindow {
        build_window(&build_group(&GroupSpec::square_lattice()).unwrap(), w).unwrap()
    }

    /// Minimality by deleting one vertex at a time and re-running the check.
    fn minimal_by_deletion(w: &GraphWindow, f: &VertexSet, pi: &VertexSet) -> bool {
        analyze_cutset(w, f, pi).unwrap().is_cutset
            && pi.iter().all(|v| {
                let smaller = VertexSet::from_unsorted(pi.iter().filter(|&u| u != v).collect());
                !analyze_cutset(w, f, &smaller).unwrap().is_cutset
            })
    }

    #[test]
    fn unit_sphere_is_minimal() {
        let w = z2(4);
        let o = VertexSet::single(0);
        let c = analyze_cutset(&w, &o, &VertexSet::sphere(&w, 1)).unwrap();
        assert!(c.is_cutset && c.minimal);
        assert_eq!((c.r_connected_for, c.size, c.diam), (2, 4, 2));
        assert_eq!(c.separated_set, o);
        assert!(!analyze_cutset(&w, &o, &VertexSet::new()).unwrap().is_cutset);
        let two = VertexSet::sphere(&w, 1).union(&VertexSet::sphere(&w, 3));
        let c = analyze_cutset(&w, &o, &two).unwrap();
        assert!(c.is_cutset && !c.minimal);
        assert!(!minimal_by_deletion(&w, &o, &two));
        assert!(analyze_cutset(&w, &VertexSet::ball(&w, 1), &VertexSet::sphere(&w, 1)).is_err());
        assert!(analyze_cutset(&w, &VertexSet::single(3), &VertexSet::new()).is_err());
    }

    #[test]
    fn minimality_agrees_with_deletion() {
        let w = z2(5);
        let o = VertexSet::single(0);
        let candidates = [
            VertexSet::sphere(&w, 2),
            VertexSet::sphere(&w, 2).union(&VertexSet::single(w.vertex_of(&[3, 0]).unwrap())),
            VertexSet::sphere(&w, 5),
            VertexSet::sphere(&w, 1).union(&VertexSet::sphere(&w, 2)),
        ];
        for pi in &candidates {
            let c = analyze_cutset(&w, &o, pi).unwrap();
            assert_eq!(c.minimal, minimal_by_deletion(&w, &o, pi), "{pi:?}");
        }
    }

    #[test]
    fn min_cut_of_balls() {
        let w = z2(8);
        for r in 0..4 {
            assert_eq!(min_vertex_cut(&w, &VertexSet::ball(&w, r)).unwrap(), 4 * (r as usize + 1));
        }
        assert!(min_vertex_cut(&w, &VertexSet::ball(&w, 8)).is_err());
    }

    #[test]
    fn animal_counts() {
        // fixed polyominoes of size k, each counted once per cell: k * A(k)
        let w = z2(8);
        let sets = connected_sets_containing(&w, 0, 4);
        let mut by_size = [0usize; 5];
        for s in &sets {
            by_size[s.len()] += 1;
        }
        assert_eq!(by_size[1..], [1, 4, 18, 76]);
    }

    #[test]
    fn isoperimetry_on_z2() {
        let c = isoperimetric_constant(&z2(9), 2, 6).unwrap();
        assert!(c > 0.0 && c <= 4.0, "{c}");
        let w = z2(12);
        for r in 1..=5 {
            let f = VertexSet::ball(&w, r - 1);
            let pi = exposed_sphere(&w, 0, r).unwrap();
            let cut = analyze_cutset(&w, &f, &pi).unwrap();
            assert!(cut.isoperimetric_bound_holds(c / 2.0, 2));
            assert!(cut.diameter_bound_holds());
            assert!(cut.within_radius_bound(1));
        }
    }

    #[test]
    fn outer_cutset_around_closed_ring() {
        let w = z2(6);
        let ball = w.local_ball(0, 6);
        let mut pos = Scratch::new(w.vertex_count());
        pos.begin(w.vertex_count());
        for (i, &v) in ball.vertices.iter().enumerate() {
            pos.set(v, i as u32);
        }
        assert!(outer_cutset(&w, &ball, &pos, |_| true).is_none());
        let closed = outer_cutset(&w, &ball, &pos, |_| false).unwrap();
        assert_eq!(closed.cutset, VertexSet::sphere(&w, 1));
        assert_eq!(closed.inside, 1);
        // closed ring at distance 2 plus closed (1,0): the ring vertex (2,0)
        // is then only reachable from outside, and (1,0) takes its place
        let pocket = w.vertex_of(&[1, 0]).unwrap();
        let shielded = w.vertex_of(&[2, 0]).unwrap();
        let out = outer_cutset(&w, &ball, &pos, |v| w.dist(v) != 2 && v != pocket).unwrap();
        let expected: VertexSet = w.sphere(2).filter(|&v| v != shielded).chain(std::iter::once(pocket)).collect();
        assert_eq!(out.cutset, expected);
        assert_eq!(out.inside, 4);
        let f = VertexSet::single(0);
        assert!(analyze_cutset(&w, &f, &out.cutset).unwrap().minimal);
    }
}
