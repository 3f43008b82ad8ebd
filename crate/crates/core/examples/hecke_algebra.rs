//! Products in the Hecke algebra `R(g, K)` for the diagonal torus.

use gkloc::exactla::q;
use gkloc::hecke::HeckeAlgebra;
use gkloc::liealg::PairData;
use gkloc::{Family, Weight};

fn main() -> gkloc::Result<()> {
    let pair = PairData::new(Family::closed_orbit())?;
    let r = HeckeAlgebra::new(&pair)?;
    let (e, f) = (pair.g.basis(0), pair.g.basis(2));

    // (e_n ⊗ x)(e_m ⊗ y) vanishes unless m = n + wt(x)
    let a = r.pure(Weight(vec![2]), q(1), &[e])?;
    let b = r.pure(Weight(vec![4]), q(1), &[f])?;
    println!("(e_2 ⊗ e)(e_4 ⊗ f) = {}", r.format(&r.mul(&a, &b)?));
    println!("(e_4 ⊗ f)(e_2 ⊗ e) = {}", r.format(&r.mul(&b, &a)?));

    let window: Vec<Weight> = (-4..=4).map(|n| Weight(vec![n])).collect();
    let one = r.approx_identity(&window)?;
    println!("unit on the left:  {}", r.mul(&one, &a)? == a);
    println!("unit on the right: {}", r.mul(&a, &one)? == a);
    Ok(())
}
