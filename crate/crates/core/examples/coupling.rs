//! The monotone coupling: one label per edge, `open at p` iff `label <= p`.
//!
//! Run: `cargo run --release --example coupling`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::geometry::VertexSet;
use polyperc::perco::{clusters_in, label_field, origin_cluster, EdgeStates, Labels};

fn main() -> polyperc::Result<()> {
    let window = build_window(&build_group(&GroupSpec::square_lattice())?, 20)?;
    let labels = label_field(&window, 2024, 0);
    let ball = VertexSet::ball(&window, 20);
    println!("   p  open edges  clusters  |C_o|  o <-> dB_20");
    let mut previous: Option<Vec<bool>> = None;
    for i in 0..=10 {
        let p = f64::from(i) / 10.0;
        let cfg = labels.at(p);
        let open: Vec<bool> = (0..window.edge_count()).map(|e| cfg.is_open(e)).collect();
        if let Some(prev) = &previous {
            assert!(prev.iter().zip(&open).all(|(a, b)| !a || *b), "open sets must grow with p");
        }
        let o = origin_cluster(&window, &cfg);
        println!(
            "{p:4.1}  {:10}  {:8}  {:5}  {}",
            open.iter().filter(|&&b| b).count(),
            clusters_in(&window, &cfg, &ball).len(),
            o.volume,
            o.reached_boundary
        );
        previous = Some(open);
    }
    Ok(())
}
