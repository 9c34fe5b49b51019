//! Recover the damped oscillator spectrum from samples whose spacing varies
//! by a factor of 20, a grid that exact DMD cannot use.
//!
//!     cargo run --release --example toy_spectrum

use weak_dmd::baseline::fit_exact_dmd;
use weak_dmd::bench::{eigenvalue_error, sample_trajectory, toy_exact_eigenvalues, toy_oscillator_spec};
use weak_dmd::{fit, BasisLayout, TimeGrid, Window};

fn main() -> weak_dmd::Result<()> {
    let grid = TimeGrid::graded(0.0, 100.0, 2000, 20.0)?;
    let snapshots = sample_trajectory(&toy_oscillator_spec(), &grid)?;
    println!("largest/smallest step: {:.1}", grid.spacing_ratio());

    let window = Window::new(0.0, 100.0)?;
    let trial = BasisLayout::single(400, 1.95, 2, window)?;
    let test = BasisLayout::single(800, 1.95, 2, window)?;
    let model = fit(&snapshots, &trial, &test, window, 0.9999)?;

    println!("rank {}", model.rank());
    for (found, exact) in model.spectrum.eigenvalues().iter().zip(toy_exact_eigenvalues()) {
        println!("{found:.6}  exact {exact}  error {:.2e}", eigenvalue_error(exact, *found));
    }

    match fit_exact_dmd(&snapshots, 2) {
        Ok(_) => println!("exact DMD accepted the grid"),
        Err(e) => println!("exact DMD: {e}"),
    }
    Ok(())
}
