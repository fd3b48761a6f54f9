//! Exponential decay of `P[o <-> dB_n, o not joined to dB_3n]` at `p = 0.6`.
//!
//! Run: `cargo run --release --example radius_decay`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::estimate::{estimate_event, fit_decay, DecayModel, EventKind};

fn main() -> polyperc::Result<()> {
    let group = build_group(&GroupSpec::square_lattice())?;
    let mut table = Vec::new();
    for n in (2..=10).step_by(2) {
        let window = build_window(&group, 3 * n)?;
        let est = estimate_event(&window, &EventKind::TruncRadius, n, 0.6, 1, 20_000)?;
        println!("n = {n:2}: {:.2e}  [{:.2e}, {:.2e}]", est.p_hat, est.ci_low, est.ci_high);
        table.push((f64::from(n), est));
    }
    let fit = fit_decay(&table, DecayModel::ExpInN)?;
    println!("log p_hat ~ {:.3} n + {:.3}  (R^2 = {:.3})", fit.slope, fit.intercept, fit.r2);
    Ok(())
}
