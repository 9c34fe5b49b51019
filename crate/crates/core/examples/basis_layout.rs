//! Build a two-tier bump basis and print where each function lives.
//!
//!     cargo run --example basis_layout

use weak_dmd::{build_basis_set, BasisLayout, Window};

fn main() -> weak_dmd::Result<()> {
    let window = Window::new(0.0, 10.0)?;
    let layout = BasisLayout::new(vec![2, 4], vec![0.5, 0.25], 2, window)?;
    let basis = build_basis_set(&layout)?;

    println!("{} functions, p = {}", basis.len(), basis.p());
    println!("{:>4} {:>8} {:>8} {:>8} {:>10}", "k", "a", "center", "b", "phi(c)");
    for (k, phi) in basis.members().iter().enumerate() {
        let (a, b) = phi.support();
        println!("{k:>4} {a:>8.3} {:>8.3} {b:>8.3} {:>10.6}", phi.center(), phi.eval(phi.center()));
    }

    let t = 3.3;
    let values = basis.eval_all(t);
    let active = values.iter().filter(|v| **v > 0.0).count();
    println!("{active} functions are nonzero at t = {t}");
    Ok(())
}
