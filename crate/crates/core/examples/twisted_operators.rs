//! The twisted action of `sl2` on `P^1` by differential operators.

use gkloc::locp1::{twisted_rep_in, Chart};

fn main() -> gkloc::Result<()> {
    let lambda0 = 3;
    for chart in [Chart::Z, Chart::W] {
        let r = twisted_rep_in(chart, lambda0);
        r.check_brackets()?;
        println!("{} chart, λ₀ = {lambda0}", chart.name());
        for (name, op) in ["e", "h", "f"].iter().zip(&r.rho) {
            println!("  ρ({name}) = {op}");
        }
    }
    Ok(())
}
