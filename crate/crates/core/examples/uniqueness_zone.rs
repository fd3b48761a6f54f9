//! Largest `s` with `P[Piv(s, n)] <= 1/2`, and `Piv(1, n)` against `n`.
//!
//! Run: `cargo run --release --example uniqueness_zone`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::estimate::{estimate_event_grid, uniqueness_zone_scan, EventKind};

fn main() -> polyperc::Result<()> {
    let window = build_window(&build_group(&GroupSpec::square_lattice())?, 16)?;
    let ns: Vec<u32> = (2..=16).step_by(2).collect();
    for p in [0.5, 0.6] {
        let piv = estimate_event_grid(&window, &EventKind::Piv { m: 1 }, &ns, p, 3, 4000)?;
        let row: Vec<String> = piv.iter().map(|e| format!("{:.3}", e.p_hat)).collect();
        println!("p = {p}: P[Piv(1, n)] for n = {ns:?}: {}", row.join(" "));
        let zone = uniqueness_zone_scan(&window, p, 16, 0.5, 3, 2000)?;
        println!("  zone at n = 16: s = {} after {} probes", zone.s, zone.probes.len());
    }
    Ok(())
}
