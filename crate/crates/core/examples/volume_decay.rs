//! Stretched-exponential tail of finite cluster volumes, compared with a
//! plain exponential fit on the same data.
//!
//! Run: `cargo run --release --example volume_decay`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::cli::alpha_from_growth;
use polyperc::estimate::{estimate_volume_tail, fit_decay, DecayModel};

fn main() -> polyperc::Result<()> {
    let spec = GroupSpec::square_lattice();
    let alpha = alpha_from_growth(&spec, 16)?.alpha();
    let window = build_window(&build_group(&spec)?, 32)?;
    let thresholds: Vec<usize> = (1..=12).map(|i| 4 * i).collect();
    let ests = estimate_volume_tail(&window, 0.55, &thresholds, 5, 50_000)?;
    let table: Vec<_> = thresholds.iter().map(|&t| t as f64).zip(ests).collect();
    for (t, e) in &table {
        println!("n_vol = {t:3}: {:.2e}", e.p_hat);
    }
    for model in [DecayModel::ExpInN, DecayModel::Stretched { alpha }] {
        let fit = fit_decay(&table, model)?;
        println!("{:>12}: slope {:.3}, R^2 = {:.3}", fit.model.axis_label(), fit.slope, fit.r2);
    }
    Ok(())
}
