//! Corridor crossing probabilities and the path families behind `κ_p(m, n)`.
//!
//! Run: `cargo run --release --example corridor`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::estimate::{corridor_kappa, PathPolicy};

fn main() -> polyperc::Result<()> {
    let window = build_window(&build_group(&GroupSpec::square_lattice())?, 10)?;
    let (n, p) = (2, 0.6);
    for m in 1..=4 {
        for policy in
            [PathPolicy::Exhaustive { cap: 4 }, PathPolicy::GeodesicFamily, PathPolicy::SampledSaw { count: 32 }]
        {
            let k = corridor_kappa(&window, m, n, p, policy, 7, 2000)?;
            println!(
                "m = {m}, {policy:?}: kappa = {:.3} over {} paths (upper bound: {})",
                k.estimate.p_hat,
                k.per_path.len(),
                k.upper_bound
            );
        }
    }
    Ok(())
}
