use polyperc::cayley::{build_group, build_window, GraphWindow, GroupSpec};
use polyperc::cli::ExperimentConfig;
use polyperc::estimate::{estimate_event, with_workers, EventKind};
use polyperc::events::{hybrid_crossing_count, piv, sprinkled_uniqueness, uniqueness};
use polyperc::explore::{counting_identity_check, explore_cluster};
use polyperc::geometry::VertexSet;
use polyperc::perco::{clusters_in, label_field, EdgeStates, Labels};
use polyperc::stats::{wilson_interval, Z95};
use proptest::prelude::*;

fn window(spec: &GroupSpec, w: u32) -> GraphWindow {
    build_window(&build_group(spec).unwrap(), w).unwrap()
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![Just(GroupSpec::square_lattice()), Just(GroupSpec::hypercubic(3)), Just(GroupSpec::Heisenberg),]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn open_sets_grow_with_p(seed in any::<u64>(), replica in 0u64..1000, p in 0.0..1.0f64, q in 0.0..1.0f64) {
        let w = window(&GroupSpec::square_lattice(), 6);
        let labels = label_field(&w, seed, replica);
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        let (a, b) = (labels.at(lo), labels.at(hi));
        for e in 0..w.edge_count() {
            prop_assert!(!a.is_open(e) || b.is_open(e));
        }
    }

    #[test]
    fn labels_do_not_depend_on_the_window(spec in spec_strategy(), seed in any::<u64>(), replica in 0u64..100) {
        let small = window(&spec, 2);
        let big = window(&spec, 4);
        let (ls, lb) = (label_field(&small, seed, replica), label_field(&big, seed, replica));
        for e in 0..small.edge_count() {
            let (u, v) = small.endpoints(e);
            let (bu, bv) = (big.vertex_of(small.element_of(u)).unwrap(), big.vertex_of(small.element_of(v)).unwrap());
            let f = big.edge_between(bu, bv).unwrap();
            prop_assert_eq!(ls.label(e), lb.label(f));
        }
    }

    #[test]
    fn window_prefix_is_the_smaller_window(spec in spec_strategy(), r in 0u32..4) {
        let big = window(&spec, 4);
        let small = window(&spec, r);
        prop_assert_eq!(small.vertex_count(), big.ball_size(r));
        for v in 0..small.vertex_count() {
            prop_assert_eq!(small.element_of(v), big.element_of(v));
        }
    }

    #[test]
    fn uniqueness_is_the_complement_of_piv(seed in any::<u64>(), p in 0.3..0.8f64, m in 1u32..4, extra in 0u32..4) {
        let w = window(&GroupSpec::square_lattice(), 8);
        let n = m + extra;
        let labels = label_field(&w, seed, 0);
        let cfg = labels.at(p);
        let o = w.origin();
        prop_assert_eq!(uniqueness(&w, &cfg, o, m, n).unwrap(), !piv(&w, &cfg, o, m, n).unwrap());
        prop_assert_eq!(
            sprinkled_uniqueness(&w, &labels, p, p, o, m, n).unwrap(),
            uniqueness(&w, &cfg, o, m, n).unwrap()
        );
    }

    #[test]
    fn sprinkling_only_helps(seed in any::<u64>(), p in 0.3..0.7f64, d1 in 0.0..0.3f64, d2 in 0.0..0.3f64) {
        let w = window(&GroupSpec::square_lattice(), 8);
        let labels = label_field(&w, seed, 1);
        let (a, b) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let o = w.origin();
        let low = sprinkled_uniqueness(&w, &labels, p, p + a, o, 2, 7).unwrap();
        let high = sprinkled_uniqueness(&w, &labels, p, p + b, o, 2, 7).unwrap();
        prop_assert!(!low || high);
        let c_low = hybrid_crossing_count(&w, &labels, p, a, 2, 2).unwrap();
        let c_high = hybrid_crossing_count(&w, &labels, p, b, 2, 2).unwrap();
        prop_assert!(c_high <= c_low);
    }

    #[test]
    fn exploration_finds_the_cluster(spec in spec_strategy(), seed in any::<u64>(), p in 0.0..1.0f64, pick in any::<usize>()) {
        let w = window(&spec, 4);
        let m = 3;
        let labels = label_field(&w, seed, 2);
        let cfg = labels.at(p);
        let ball = VertexSet::ball(&w, m);
        let x = ball.as_slice()[pick % ball.len()];
        let trace = explore_cluster(&w, &cfg, m, x).unwrap();
        let dec = clusters_in(&w, &cfg, &ball);
        prop_assert_eq!(trace.cluster(), &dec.members(dec.cluster_of(x).unwrap()));
        prop_assert_eq!(trace.open_edges().len() + trace.closed_edges().len(), trace.stop_time());
        prop_assert!(counting_identity_check(&w, &cfg, m).unwrap().holds());
    }

    #[test]
    fn wilson_interval_brackets_the_frequency(n in 1u64..100_000, frac in 0.0..=1.0f64) {
        let k = (frac * n as f64).round() as u64;
        let (lo, hi) = wilson_interval(k, n, Z95);
        let p = k as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }

    #[test]
    fn config_round_trips(seed in any::<u64>(), replicas in 1u64..10_000, w in 12u32..40) {
        let text = format!(
            r#"{{"group": {{"kind": "heisenberg"}}, "W": {w}, "event": {{"name": "piv", "params": {{"m": 1}}}},
                "p_grid": [0.5], "n_grid": [2, 4], "seed": {seed}, "replicas": {replicas}}}"#
        );
        let config = ExperimentConfig::from_json(&text).unwrap();
        let again = ExperimentConfig::from_json(&serde_json::to_string(&config).unwrap()).unwrap();
        prop_assert_eq!(&config, &again);
        prop_assert_eq!(config.digest().unwrap(), again.digest().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn estimates_do_not_depend_on_workers(seed in any::<u64>(), workers in 2usize..6) {
        let w = window(&GroupSpec::square_lattice(), 6);
        let kind = EventKind::Piv { m: 1 };
        let one = with_workers(1, || estimate_event(&w, &kind, 5, 0.55, seed, 300)).unwrap().unwrap();
        let many = with_workers(workers, || estimate_event(&w, &kind, 5, 0.55, seed, 300)).unwrap().unwrap();
        prop_assert_eq!(one, many);
    }
}
