//! Exposed spheres as minimal cutsets, and sphere separation.
//!
//! Run: `cargo run --release --example exposed_spheres`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::geometry::{analyze_cutset, exposed_sphere, verify_sphere_separation, VertexSet};

fn main() -> polyperc::Result<()> {
    for (name, spec) in [("Z^2", GroupSpec::square_lattice()), ("Heisenberg", GroupSpec::Heisenberg)] {
        let window = build_window(&build_group(&spec)?, 12)?;
        println!("{name}");
        for r in 1..=4 {
            let sphere = exposed_sphere(&window, window.origin(), r)?;
            let inner = VertexSet::ball(&window, r - 1);
            let cut = analyze_cutset(&window, &inner, &sphere)?;
            println!(
                "  r = {r}: |S_r| = {:3}, exposed {:3}, minimal cutset {}, coarse-connected at R' = {}, separated {}",
                window.sphere(r).len(),
                cut.size,
                cut.minimal,
                cut.r_connected_for,
                verify_sphere_separation(&window, r)?
            );
        }
    }
    Ok(())
}
