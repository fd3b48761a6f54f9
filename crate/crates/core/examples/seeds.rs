//! The seed radius schedule and the two-seed connection event.
//!
//! Run: `cargo run --release --example seeds`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::estimate::{estimate_event, EventKind};
use polyperc::events::SeedSchedule;

fn main() -> polyperc::Result<()> {
    let schedule = SeedSchedule::default();
    for n in [10u64, 100, 1000, 10_000, 1_000_000] {
        println!(
            "n = {n:>7}: sigma = {:>3}, t = {:>4}, eps = {:.2e}",
            schedule.sigma(n),
            schedule.t(n),
            schedule.epsilon(n)
        );
    }
    println!("schedule ordered for n >= {}", schedule.threshold(1_000_000));

    let window = build_window(&build_group(&GroupSpec::square_lattice())?, 16)?;
    for p in [0.45, 0.5, 0.55, 0.6] {
        let kind = EventKind::TwoSeed { distance: 8, sigma: None };
        let est = estimate_event(&window, &kind, 16, p, 4, 4000)?;
        println!("p = {p}: P[seeds 8 apart connected in B_16] = {:.3}", est.p_hat);
    }
    Ok(())
}
