use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley::{
    ball_edge_count, build_group, build_window, growth_exponent_fit, ratio_scan, GraphWindow, GroupSpec,
};
use crate::error::{Error, Result};
use crate::estimate::{estimate_event, with_workers, EventKind};
use crate::events::{hybrid_crossing_count, piv, sprinkled_uniqueness, uniqueness};
use crate::explore::{counting_identity_check, explore_cluster, meeting_edges};
use crate::geometry::{
    analyze_cutset, annulus_path_lengths, exposed_sphere, isoperimetric_constant, verify_sphere_separation, VertexSet,
};
use crate::perco::{clusters_in, label_field, EdgeStates, Labels};
use crate::stats::mean_std;

pub const SUITES: [&str; 4] = ["geometry", "identities", "coupling", "all"];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub instance: Value,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub samples: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random configurations per statistical or per-configuration check.
    pub samples: u64,
    /// Coarse-connectedness radius for the cutset checks; per-group default if unset.
    pub r_coarse: Option<u32>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 1, samples: 1000, r_coarse: None }
    }
}

fn check(checks: &mut Vec<Check>, name: &str, instance: Value, pass: bool, detail: String) {
    checks.push(Check { name: name.into(), instance, pass, detail });
}

/// Suite groups with their default coarse radius: half the longest relator
/// of a finite presentation (`[x, y]` for Z^2, `[x, [x, y]]` for Heisenberg).
fn groups() -> [(&'static str, GroupSpec, u32); 2] {
    [("z2", GroupSpec::square_lattice(), 2), ("heisenberg", GroupSpec::Heisenberg, 4)]
}

fn window(spec: &GroupSpec, w: u32) -> Result<GraphWindow> {
    build_window(&build_group(spec)?, w)
}

/// Runs one suite (or all of them).
pub fn verify(suite: &str, opts: VerifyOptions) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    match suite {
        "geometry" => geometry(&mut checks, opts)?,
        "identities" => identities(&mut checks, opts)?,
        "coupling" => coupling(&mut checks, opts)?,
        "all" => {
            geometry(&mut checks, opts)?;
            identities(&mut checks, opts)?;
            coupling(&mut checks, opts)?;
        }
        other => {
            return Err(Error::Config(format!("unknown verify suite `{other}`; expected one of {SUITES:?}")));
        }
    }
    let passed = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { suite: suite.into(), seed: opts.seed, samples: opts.samples, passed, checks })
}

/// Separation, exposed spheres as cutsets, cutset bounds, the ball-ratio
/// minimiser, annulus paths and window nesting.
pub fn geometry(checks: &mut Vec<Check>, opts: VerifyOptions) -> Result<()> {
    for (name, spec, default_r) in groups() {
        let rr = opts.r_coarse.unwrap_or(default_r);
        let d = growth_exponent_fit(&build_group(&spec)?, 16)?.d_hat.round() as u32;
        let c_iso = isoperimetric_constant(&window(&spec, 6)?, d, 5)?;
        for r in 1..=4 {
            let w = window(&spec, 4 * r)?;
            let inst = json!({"group": name, "r": r, "W": 4 * r});
            let sep = verify_sphere_separation(&w, r)?;
            check(checks, "sphere_separation", inst.clone(), sep, String::new());

            let pi = exposed_sphere(&w, w.origin(), r)?;
            let cut = analyze_cutset(&w, &VertexSet::ball(&w, r - 1), &pi)?;
            check(
                checks,
                "exposed_sphere_minimal_cutset",
                inst.clone(),
                cut.is_cutset && cut.minimal,
                format!("size {}, cutset {}, minimal {}", cut.size, cut.is_cutset, cut.minimal),
            );
            check(
                checks,
                "exposed_sphere_coarse_connected",
                json!({"group": name, "r": r, "W": 4 * r, "R": rr}),
                cut.r_connected_for <= rr,
                format!("connected for R' = {}", cut.r_connected_for),
            );
            check(
                checks,
                "cutset_radius_bound",
                json!({"group": name, "r": r, "R": rr}),
                cut.within_radius_bound(rr),
                format!("min distance {:?}, size {}", cut.min_dist_to_origin, cut.size),
            );
            check(
                checks,
                "cutset_diameter_bound",
                inst.clone(),
                cut.diameter_bound_holds(),
                format!("diam {} vs diam(F) {}", cut.diam, cut.diam_f),
            );
            check(
                checks,
                "cutset_isoperimetry",
                json!({"group": name, "r": r, "d": d, "c": c_iso / 2.0}),
                cut.isoperimetric_bound_holds(c_iso / 2.0, d),
                format!("|Π| = {}, |F| = {}", cut.size, cut.f_size),
            );
        }

        let w = window(&spec, 16)?;
        for n in 1..=8 {
            let scan = ratio_scan(&w, n)?;
            // independent recount of |∂B_m| from the adjacency lists
            let boundary = |m: u32| {
                w.sphere(m)
                    .map(|v| w.neighbors(v).iter().filter(|&&(u, _)| w.dist(u as usize) == m + 1).count())
                    .sum::<usize>()
            };
            let (best_m, best) = (n..2 * n)
                .map(|m| (m, boundary(m) as f64 / w.ball_size(m) as f64))
                .fold((n, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
            let bound = ball_edge_count(&w, 2 * n) as f64 / (n as f64 * w.ball_size(n) as f64);
            check(
                checks,
                "ratio_minimiser",
                json!({"group": name, "n": n, "W": 16}),
                scan.m == best_m && (scan.ratio - best).abs() < 1e-12 && scan.ratio <= bound,
                format!(
                    "m = {} ratio {:.5}, exhaustive m = {best_m}, averaging bound {:.5}",
                    scan.m, scan.ratio, bound
                ),
            );
        }

        let w = window(&spec, 9)?;
        for (n, k) in [(2, 1), (3, 1), (3, 2)] {
            let rep = annulus_path_lengths(&w, n, k)?;
            check(
                checks,
                "annulus_path_length",
                json!({"group": name, "n": n, "k": k, "W": 9}),
                !rep.disconnected && f64::from(rep.max_length) <= rep.bound,
                format!("longest {} vs bound {:.1}", rep.max_length, rep.bound),
            );
        }

        let small = window(&spec, 4)?;
        let big = window(&spec, 7)?;
        let same_vertices = (0..small.vertex_count()).all(|v| small.element_of(v) == big.element_of(v));
        let same_edges = (0..small.edge_count()).all(|e| {
            let (a, b) = small.endpoints(e);
            big.edge_between(a, b).is_some_and(|f| big.edge_digest(f) == small.edge_digest(e))
        });
        check(
            checks,
            "window_nesting",
            json!({"group": name, "W": [4, 7]}),
            same_vertices && same_edges,
            String::new(),
        );
    }

    let w = window(&GroupSpec::square_lattice(), 12)?;
    for r in 1..=6 {
        let exposed = exposed_sphere(&w, w.origin(), r)?;
        check(
            checks,
            "lattice_sphere_fully_exposed",
            json!({"group": "z2", "r": r, "W": 12}),
            exposed == VertexSet::sphere(&w, r),
            format!("{} of {}", exposed.len(), w.sphere(r).len()),
        );
    }
    Ok(())
}

/// Counting identities, meeting edges, exploration and its martingale.
pub fn identities(checks: &mut Vec<Check>, opts: VerifyOptions) -> Result<()> {
    const PS: [f64; 3] = [0.25, 0.5, 0.75];
    for (name, spec, m) in [("z2", GroupSpec::square_lattice(), 4), ("heisenberg", GroupSpec::Heisenberg, 3)] {
        let w = window(&spec, m + 1)?;
        let region = VertexSet::ball(&w, m);
        let mut bad_identity = 0u64;
        let mut bad_h = 0u64;
        let mut bad_explore = 0u64;
        for r in 0..opts.samples {
            let labels = label_field(&w, opts.seed, r);
            let p = PS[(r % 3) as usize];
            let cfg = labels.at(p);
            let id = counting_identity_check(&w, &cfg, m)?;
            let h_expected = p * id.rhs_closed as f64 - (1.0 - p) * id.rhs_open as f64;
            if !id.holds() || (id.h_sum - h_expected).abs() > 1e-9 {
                bad_identity += 1;
            }
            if meeting_edges(&w, &cfg, m)?.len() != id.h_size {
                bad_h += 1;
            }
            let x = (r as usize * 31) % region.len();
            let trace = explore_cluster(&w, &cfg, m, x)?;
            let dec = clusters_in(&w, &cfg, &region);
            let cluster = dec.cluster_of(x).map(|c| dec.members(c));
            if cluster.as_ref() != Some(trace.cluster()) || (trace.x_final() - trace.h()).abs() > 1e-9 {
                bad_explore += 1;
            }
        }
        let inst = json!({"group": name, "m": m, "W": m + 1, "configs": opts.samples, "p": PS});
        check(checks, "counting_identities", inst.clone(), bad_identity == 0, format!("{bad_identity} violations"));
        check(checks, "meeting_edges_tally", inst.clone(), bad_h == 0, format!("{bad_h} mismatches"));
        check(checks, "exploration_cluster", inst, bad_explore == 0, format!("{bad_explore} mismatches"));
    }

    let w = window(&GroupSpec::square_lattice(), 9)?;
    for p in [0.3, 0.6] {
        let traces: Vec<_> = (0..opts.samples)
            .map(|r| explore_cluster(&w, &label_field(&w, opts.seed, r).at(p), 8, w.origin()))
            .collect::<Result<_>>()?;
        let xs: Vec<f64> = traces.iter().map(|t| t.x_final()).collect();
        let (mean, std) = mean_std(&xs);
        let tol = 3.0 * std / (xs.len() as f64).sqrt();
        check(
            checks,
            "optional_stopping",
            json!({"group": "z2", "m": 8, "p": p, "N": opts.samples}),
            mean.abs() <= tol,
            format!("mean X_T = {mean:.4}, tolerance {tol:.4}"),
        );
        for t in [16usize, 64, 256] {
            let maxes: Vec<f64> = traces.iter().map(|tr| tr.max_square_up_to(t)).collect();
            let (m, s) = mean_std(&maxes);
            let tol = 3.0 * s / (maxes.len() as f64).sqrt();
            check(
                checks,
                "doob_bound",
                json!({"group": "z2", "m": 8, "p": p, "t": t}),
                m <= 4.0 * t as f64 + tol,
                format!("mean max X^2 = {m:.3} vs 4t = {}", 4 * t),
            );
        }
        let ids: Vec<_> = (0..opts.samples)
            .map(|r| counting_identity_check(&w, &label_field(&w, opts.seed, r).at(p), 8))
            .collect::<Result<_>>()?;
        let diffs: Vec<f64> = ids.iter().map(|id| p * id.closed_bar as f64 - (1.0 - p) * id.rhs_open as f64).collect();
        let (mean, std) = mean_std(&diffs);
        let tol = 3.0 * std / (diffs.len() as f64).sqrt();
        check(
            checks,
            "closed_open_balance",
            json!({"group": "z2", "m": 8, "p": p, "N": opts.samples}),
            mean.abs() <= tol,
            format!("mean p|closed| - (1-p)|open| = {mean:.3}, tolerance {tol:.3}"),
        );
    }
    Ok(())
}

/// Monotone coupling, sprinkling, hybrid merging and worker determinism.
pub fn coupling(checks: &mut Vec<Check>, opts: VerifyOptions) -> Result<()> {
    let w = window(&GroupSpec::square_lattice(), 8)?;
    let o = w.origin();
    let (p, m, n) = (0.55, 2, 6);
    let qs: Vec<f64> = (0..=9).map(|i| p + i as f64 * 0.05).collect();
    let mut bad_nest = 0u64;
    let mut bad_piv = 0u64;
    let mut bad_sprinkle = 0u64;
    let mut bad_monotone = 0u64;
    let mut bad_hybrid = 0u64;
    for r in 0..opts.samples {
        let labels = label_field(&w, opts.seed, r);
        let lo = labels.at(p);
        let hi = labels.at(0.6);
        if (0..w.edge_count()).any(|e| lo.is_open(e) && !hi.is_open(e)) {
            bad_nest += 1;
        }
        let u = uniqueness(&w, &lo, o, m, n)?;
        if u == piv(&w, &lo, o, m, n)? {
            bad_piv += 1;
        }
        let vals: Vec<bool> =
            qs.iter().map(|&q| sprinkled_uniqueness(&w, &labels, p, q, o, m, n)).collect::<Result<_>>()?;
        if vals[0] != u {
            bad_sprinkle += 1;
        }
        if vals.windows(2).any(|v| v[0] && !v[1]) {
            bad_monotone += 1;
        }
        let counts: Vec<usize> = [0.0, 0.05, 0.2, 0.45]
            .iter()
            .map(|&dl| hybrid_crossing_count(&w, &labels, p, dl, 2, 2))
            .collect::<Result<_>>()?;
        if counts.windows(2).any(|c| c[1] > c[0]) {
            bad_hybrid += 1;
        }
    }
    let inst = json!({"group": "z2", "W": 8, "p": p, "m": m, "n": n, "configs": opts.samples});
    check(checks, "label_nesting", inst.clone(), bad_nest == 0, format!("{bad_nest} violations"));
    check(checks, "uniqueness_is_not_piv", inst.clone(), bad_piv == 0, format!("{bad_piv} violations"));
    check(
        checks,
        "sprinkled_at_p_is_uniqueness",
        inst.clone(),
        bad_sprinkle == 0,
        format!("{bad_sprinkle} violations"),
    );
    check(
        checks,
        "sprinkled_monotone_in_q",
        json!({"group": "z2", "W": 8, "p": p, "q": qs, "configs": opts.samples}),
        bad_monotone == 0,
        format!("{bad_monotone} violations"),
    );
    check(
        checks,
        "hybrid_count_nonincreasing",
        json!({"group": "z2", "W": 8, "p": p, "r": 2, "n": 2, "delta": [0.0, 0.05, 0.2, 0.45]}),
        bad_hybrid == 0,
        format!("{bad_hybrid} violations"),
    );

    let kind = EventKind::Piv { m: 1 };
    let runs: Vec<String> = [1usize, 4, 8]
        .iter()
        .map(|&k| -> Result<String> {
            let est = with_workers(k, || estimate_event(&w, &kind, 6, 0.6, opts.seed, opts.samples))??;
            Ok(serde_json::to_string(&est)?)
        })
        .collect::<Result<_>>()?;
    check(
        checks,
        "worker_determinism",
        json!({"event": "piv", "m": 1, "n": 6, "p": 0.6, "workers": [1, 4, 8]}),
        runs.windows(2).all(|r| r[0] == r[1]),
        String::new(),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(verify("foo", VerifyOptions::default()), Err(Error::Config(_))));
    }

    #[test]
    fn suites_pass_with_few_samples() {
        let opts = VerifyOptions { samples: 60, ..VerifyOptions::default() };
        for suite in ["identities", "coupling"] {
            let report = verify(suite, opts).unwrap();
            let failed: Vec<_> = report.failures().collect();
            assert!(report.passed, "{failed:?}");
        }
    }
}
