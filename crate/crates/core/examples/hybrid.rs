//! Crossing clusters of the hybrid configuration as the sprinkling grows.
//!
//! Run: `cargo run --release --example hybrid`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::events::hybrid_crossing_count;
use polyperc::perco::label_field;

fn main() -> polyperc::Result<()> {
    let window = build_window(&build_group(&GroupSpec::square_lattice())?, 16)?;
    let (p, n, r) = (0.5, 4, 2);
    for delta in [0.0, 0.02, 0.05, 0.1, 0.2] {
        let counts: Vec<usize> = (0..2000)
            .map(|rep| hybrid_crossing_count(&window, &label_field(&window, 6, rep), p, delta, r, n))
            .collect::<polyperc::Result<_>>()?;
        let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
        let single = counts.iter().filter(|&&c| c == 1).count() as f64 / counts.len() as f64;
        println!("delta = {delta:.2}: mean N_r = {mean:.3}, P[N_r = 1] = {single:.3}");
    }
    Ok(())
}
