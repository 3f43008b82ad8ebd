//! Products in `U(sl2)` in PBW normal form.

use gkloc::exactla::q;
use gkloc::liealg::sl2;
use gkloc::pbw::Enveloping;

fn main() {
    let u = Enveloping::new(sl2());
    let (e, h, f) = (u.basis_elt(0), u.basis_elt(1), u.basis_elt(2));
    println!("f e = {:?}", u.mul(&f, &e));
    println!("h e = {:?}", u.mul(&h, &e));

    // the Casimir h^2 + 2h + 4fe commutes with everything
    let fe = u.mul(&f, &e);
    let casimir = u.mul(&h, &h).add(&h.scale(&q(2))).add(&fe.scale(&q(4)));
    for (name, x) in [("e", &e), ("h", &h), ("f", &f)] {
        println!("[Ω, {name}] = {:?}", u.commutator(&casimir, x));
    }
    println!("S(e f) = {:?}", u.antipode(&u.mul(&e, &f)));
}
