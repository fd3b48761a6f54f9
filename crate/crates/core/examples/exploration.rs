//! Exploring the cluster of a vertex edge by edge and watching the martingale
//! `X_t = p |closed| - (1 - p) |open|`.
//!
//! Run: `cargo run --release --example exploration`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::explore::{counting_identity_check, explore_cluster};
use polyperc::perco::{label_field, Labels};
use polyperc::stats::mean_std;

fn main() -> polyperc::Result<()> {
    let window = build_window(&build_group(&GroupSpec::square_lattice())?, 9)?;
    for p in [0.3, 0.5, 0.6] {
        let finals: Vec<f64> = (0..5000)
            .map(|r| {
                let labels = label_field(&window, 9, r);
                explore_cluster(&window, &labels.at(p), 8, window.origin()).map(|t| t.x_final())
            })
            .collect::<polyperc::Result<_>>()?;
        let (mean, std) = mean_std(&finals);
        println!("p = {p}: mean X_T = {mean:+.4} (3 std/sqrt N = {:.4})", 3.0 * std / (finals.len() as f64).sqrt());
    }

    let labels = label_field(&window, 9, 0);
    let trace = explore_cluster(&window, &labels.at(0.55), 8, window.origin())?;
    println!(
        "one trace at p = 0.55: {} steps, |cluster| = {}, X_T = {:+.2}",
        trace.stop_time(),
        trace.cluster().len(),
        trace.x_final()
    );
    let id = counting_identity_check(&window, &labels.at(0.55), 8)?;
    println!(
        "counting identities: open {} = {}, closed {} = {}, |H| = {}, holds = {}",
        id.lhs_open,
        id.rhs_open,
        id.lhs_closed,
        id.rhs_closed,
        id.h_size,
        id.holds()
    );
    Ok(())
}
