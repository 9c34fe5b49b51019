//! Hold the trial basis fixed and grow the test set.
//!
//!     cargo run --release --example convergence_sweep

use weak_dmd::bench::{
    convergence_sweep, eigenvalue_error, random_grid, sample_trajectory, toy_exact_eigenvalues, toy_oscillator_spec,
    TestTemplate,
};
use weak_dmd::{BasisLayout, FitOptions, Window};

fn main() -> weak_dmd::Result<()> {
    let grid = random_grid(0.0, 20.0, 2000, 3)?;
    let snapshots = sample_trajectory(&toy_oscillator_spec(), &grid)?;
    let window = Window::new(0.0, 20.0)?;
    let trial = BasisLayout::single(80, 1.95, 2, window)?;
    let options = FitOptions {
        energy: 0.9999,
        ..FitOptions::default()
    };
    let template = TestTemplate { p: 2, overlap: 1.95 };
    let rows = convergence_sweep(&snapshots, &trial, &[8, 16, 32, 64, 128], template, window, &options)?;

    let exact = toy_exact_eigenvalues()[0];
    println!("{:>6} {:>28} {:>10}", "tests", "dominant", "error");
    for row in rows {
        let lam = row.spectrum.dominant().expect("nonempty spectrum");
        println!("{:>6} {:>28.6} {:>10.3e}", row.test_size, lam, eigenvalue_error(exact, lam));
    }
    Ok(())
}
