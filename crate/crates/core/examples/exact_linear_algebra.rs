//! Rank, kernel and homology over the rationals.

use gkloc::exactla::{self, q, SparseMatrix};

fn main() -> gkloc::Result<()> {
    // the simplicial chain complex of a hollow triangle
    let d1 = SparseMatrix::from_i64(&[&[-1, 0, -1], &[1, -1, 0], &[0, 1, 1]]);
    let d0 = SparseMatrix::zeros(0, 3);
    let d2 = SparseMatrix::zeros(3, 0);
    println!("rank d1 = {}", exactla::rank(&d1));
    println!("H_0 = {}", exactla::homology_dim(&d0, &d1)?);
    println!("H_1 = {}", exactla::homology_dim(&d1, &d2)?);
    for v in exactla::kernel_basis(&d1) {
        let s: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("cycle: ({})", s.join(", "));
    }

    let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
    let x = exactla::solve(&a, &[q(1), q(0)]).expect("invertible");
    println!("solution: {} {}", x[0], x[1]);
    Ok(())
}
