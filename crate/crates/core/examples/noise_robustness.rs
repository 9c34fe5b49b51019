//! Weak DMD against exact DMD on noisy, equispaced oscillator data.
//!
//!     cargo run --release --example noise_robustness

use weak_dmd::baseline::fit_exact_dmd;
use weak_dmd::bench::{
    add_noise, eigenvalue_error, sample_trajectory, toy_exact_eigenvalues, toy_oscillator_spec, NoiseSpec,
};
use weak_dmd::{fit, BasisLayout, TimeGrid, Window};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn main() -> weak_dmd::Result<()> {
    let grid = TimeGrid::uniform(0.0, 100.0, 2000)?;
    let clean = sample_trajectory(&toy_oscillator_spec(), &grid)?;
    let window = Window::covering(&grid);
    let trial = BasisLayout::single(400, 1.95, 2, window)?;
    let test = BasisLayout::single(800, 1.95, 2, window)?;
    let exact = toy_exact_eigenvalues()[0];

    let (mut weak, mut dmd) = (Vec::new(), Vec::new());
    for seed in 0..10 {
        let noisy = add_noise(&clean, &NoiseSpec::relative(0.2, 0.15, seed))?;
        let w = fit(&noisy, &trial, &test, window, 0.9999)?.spectrum.eigenvalues()[0];
        let d = fit_exact_dmd(&noisy, 2)?.dominant();
        println!("seed {seed}: weak {w:.5}  exact {d:.5}");
        weak.push(eigenvalue_error(exact, w));
        dmd.push(eigenvalue_error(exact, d));
    }
    println!("median error: weak {:.3e}, exact {:.3e}", median(weak), median(dmd));
    Ok(())
}
