//! The coarse-grained field `X` at scale `k` and its closed cutsets.
//!
//! Run: `cargo run --release --example peierls`

use polyperc::cayley::{build_group, build_window, GroupSpec};
use polyperc::events::{coarse_cutset_sizes, coarse_field, smallest_closed_coarse_cutset};
use polyperc::perco::label_field;

fn main() -> polyperc::Result<()> {
    let window = build_window(&build_group(&GroupSpec::square_lattice())?, 20)?;
    let k = 10;
    for p in [0.55, 0.6, 0.7, 0.85] {
        let mut open = 0;
        let mut sites = 0;
        let mut cutsets = Vec::new();
        for r in 0..50 {
            let labels = label_field(&window, 8, r);
            let field = coarse_field(&window, &labels, p, k)?;
            open += field.open_count();
            sites += field.len();
            cutsets.push(smallest_closed_coarse_cutset(&field).map_or(0, |c| c.size));
            if r == 0 {
                let found = coarse_cutset_sizes(&field, 4)?.iter().filter(|c| c.is_some()).count();
                println!("p = {p}: {found} sites enclosed by a closed cutset within distance 4");
            }
        }
        println!(
            "  marginal P[X = 1] = {:.4}, origin cutset sizes (0 = none) {:?}",
            open as f64 / sites as f64,
            &cutsets[..12]
        );
    }
    Ok(())
}
