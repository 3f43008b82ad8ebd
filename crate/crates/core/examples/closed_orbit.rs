//! A closed torus orbit: the delta module at `z = 0` against `P_0` of the
//! Borel-induced module.

use gkloc::harness::{run_case, VerificationCase};
use gkloc::{Family, Window};

fn main() -> gkloc::Result<()> {
    for lambda0 in [-2, -5] {
        let case = VerificationCase::new(Family::closed_orbit(), vec![lambda0], vec![], Window::new(vec![(-12, 12)])?)?;
        let r = run_case(&case)?;
        let weights: Vec<i64> = r.side(true, 0).iter().map(|e| e.weight[0]).collect();
        println!("λ₀ = {lambda0}: {:?}, weights {weights:?}", r.verdict);
    }
    Ok(())
}
