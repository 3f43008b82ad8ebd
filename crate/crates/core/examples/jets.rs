//! Jets of sections along an orbit, checked against the axioms of an
//! associated module.

use gkloc::locp1::JetModule;

fn main() -> gkloc::Result<()> {
    for p in 1..=4 {
        let closed = JetModule::closed(-3, p)?.check();
        let open = JetModule::open(1, 0, 4, p)?.check();
        println!("p = {p}: closed {}, open {}", closed.all(), open.all());
    }
    println!("{:?}", JetModule::closed(-3, 2)?.check());
    Ok(())
}
