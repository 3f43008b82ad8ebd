//! The standard complex for a product of two closed orbits, where `h/l`
//! is two-dimensional and the complex has three terms.

use gkloc::cohind::{build_standard_complex, euler_characteristic};
use gkloc::harness::input_module;
use gkloc::{Family, FactorKind, PairData, Weight, Window};

fn main() -> gkloc::Result<()> {
    let pair = PairData::new(Family::product(vec![FactorKind::ClosedZero, FactorKind::ClosedZero]))?;
    let v = input_module(&pair, &[-1, -2], &[])?;
    let cx = build_standard_complex(&pair, &v, &Window::cube(2, -2, 4)?)?;
    cx.check_d_squared()?;
    let nu = Weight(vec![3, 2]);
    let dims: Vec<usize> = (0..=cx.top()).map(|d| cx.dim(d, &nu)).collect();
    println!("term dimensions at {:?}: {dims:?}", nu.0);
    for j in 0..=cx.top() {
        println!("H_{j}: {}", cx.homology(j)?);
    }
    println!("Euler characteristic: {}", euler_characteristic(&cx)?);
    Ok(())
}
