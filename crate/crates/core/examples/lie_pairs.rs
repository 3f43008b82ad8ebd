//! The pairs `(g, K)` and subpairs `(h, L)` that the crate supports.

use gkloc::harness;
use gkloc::{Family, FactorKind};

fn main() -> gkloc::Result<()> {
    let families = [
        Family::closed_orbit(),
        Family::open_orbit(),
        Family::BorelWeilBott,
        Family::product(vec![FactorKind::ClosedZero, FactorKind::OpenOne]),
    ];
    for f in families {
        let d = harness::describe(&f)?;
        println!(
            "{} ({}): K = {}, dim h/l = {}, dim u = {}",
            d["family"].as_str().unwrap_or_default(),
            d["name"].as_str().unwrap_or_default(),
            d["K"].as_str().unwrap_or_default(),
            d["dim_h_mod_l"],
            d["dim_u"],
        );
    }
    Ok(())
}
