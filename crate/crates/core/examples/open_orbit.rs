//! An open torus orbit: Laurent sections with a parity, both sides.

use gkloc::harness::{algebraic_side, geometric_side, VerificationCase};
use gkloc::{Family, PairData, Window};

fn main() -> gkloc::Result<()> {
    let pair = PairData::new(Family::open_orbit())?;
    for parity in [0, 1] {
        let case = VerificationCase::new(Family::open_orbit(), vec![1], vec![parity], Window::new(vec![(-7, 7)])?)?;
        let geo = geometric_side(&pair, &case)?;
        let alg = algebraic_side(&pair, &case)?;
        println!("parity {parity}");
        println!("  sections:  {}", geo[0]);
        for (j, c) in alg.iter().enumerate() {
            println!("  P_{j}:       {c}");
        }
    }
    Ok(())
}
