//! Decide whether a slowly growing or decaying mode dominates, in the
//! presence of a fast decaying one and noise.
//!
//!     cargo run --release --example stiff_surrogate

use weak_dmd::bench::{add_noise, random_grid, sample_trajectory, two_mode_surrogate, NoiseSpec};
use weak_dmd::{fit, BasisLayout, Window};

fn main() -> weak_dmd::Result<()> {
    let window = Window::new(0.0, 200.0)?;
    let trial = BasisLayout::single(10, 1.5, 2, window)?;
    let test = BasisLayout::single(40, 1.5, 2, window)?;
    for (label, l1, l2) in [("growing", 0.007565, -0.270383), ("decaying", -0.002244, -0.27054)] {
        let spec = two_mode_surrogate(l1, l2, label);
        let mut correct = 0;
        for seed in 0..20 {
            let grid = random_grid(0.0, 200.0, 1000, 1000 + seed)?;
            let noisy = add_noise(&sample_trajectory(&spec, &grid)?, &NoiseSpec::relative(0.2, 0.15, seed))?;
            let lam = fit(&noisy, &trial, &test, window, 0.9999)?.spectrum.eigenvalues()[0];
            if lam.re.signum() == l1.signum() {
                correct += 1;
            }
        }
        println!("{label}: true {l1}, correct sign in {correct}/20 seeds");
    }
    Ok(())
}
