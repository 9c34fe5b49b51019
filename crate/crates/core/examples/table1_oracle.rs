//! Eigenvalues obtained when the exact oscillator solutions are used as both
//! trial and test functions on [0, t2].
//!
//!     cargo run --example table1_oracle

use weak_dmd::bench::table1_oracle;

fn main() -> weak_dmd::Result<()> {
    for t2 in [1.0, 5.0, 20.0, 100.0] {
        let spectrum = table1_oracle(t2)?;
        let lam = spectrum.dominant().expect("two eigenvalues");
        println!("t2 = {t2:>5}: {:.6} +/- {:.6}i", lam.re, lam.im);
    }
    Ok(())
}
