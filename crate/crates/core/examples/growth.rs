//! Ball growth of a few Cayley graphs and their fitted growth exponents.
//!
//! Run: `cargo run --release --example growth`

use polyperc::cayley::{ball_metrics, build_group, build_window, growth_exponent_fit, ratio_scan, GroupSpec};

fn main() -> polyperc::Result<()> {
    let groups = [
        ("Z^2", GroupSpec::square_lattice()),
        ("Z^3", GroupSpec::hypercubic(3)),
        ("Heisenberg", GroupSpec::Heisenberg),
    ];
    for (name, spec) in groups {
        let group = build_group(&spec)?;
        let window = build_window(&group, 12)?;
        let sizes: Vec<usize> = (0..=12).map(|r| window.ball_size(r)).collect();
        let fit = growth_exponent_fit(&group, 12)?;
        println!("{name}: degree {}, |B_r| = {sizes:?}", window.degree());
        println!("  d_hat = {:.3} (1 - R^2 = {:.1e})", fit.d_hat, fit.residual);
        let m = ball_metrics(&window, 6)?;
        let scan = ratio_scan(&window, 3)?;
        println!(
            "  B_6: {} vertices, {} on the sphere, {} boundary edges; min |dB_m|/|B_m| over [3, 6) at m = {} ({:.3})",
            m.ball_size, m.sphere_size, m.edge_boundary_size, scan.m, scan.ratio
        );
    }
    Ok(())
}
