//! `K = SL(2)`: Čech cohomology of `O(n)` against `P_{1-s}`.

use gkloc::harness::{run_case, VerificationCase};
use gkloc::locp1::cech_cohomology_on;
use gkloc::{Family, Window};

fn main() -> gkloc::Result<()> {
    for n in -4..=3 {
        let (h0, h1) = cech_cohomology_on(n)?;
        let case = VerificationCase::new(Family::BorelWeilBott, vec![n], vec![], Window::new(vec![(0, 8)])?)?;
        let r = run_case(&case)?;
        println!("O({n:>2}): H^0 = {h0:<4} H^1 = {h1:<4} {:?}", r.verdict);
    }
    Ok(())
}
