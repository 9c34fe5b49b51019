//! Project noisy snapshots onto a trial basis and compare the smoothed
//! trajectory with the clean signal.
//!
//!     cargo run --example denoise

use weak_dmd::bench::{add_noise, random_grid, sample_trajectory, toy_oscillator_spec, NoiseSpec};
use weak_dmd::projection::DEFAULT_RCOND;
use weak_dmd::{build_basis_set, BasisLayout, TrialProjection, Window};

fn relative_rms(a: &nalgebra::DMatrix<f64>, b: &nalgebra::DMatrix<f64>) -> f64 {
    (a - b).norm() / b.norm()
}

fn main() -> weak_dmd::Result<()> {
    let grid = random_grid(0.0, 20.0, 1000, 11)?;
    let clean = sample_trajectory(&toy_oscillator_spec(), &grid)?;
    let noisy = add_noise(&clean, &NoiseSpec::relative(0.2, 0.15, 5))?;

    let window = Window::covering(&grid);
    println!("noisy vs clean: {:.4}", relative_rms(noisy.data(), clean.data()));
    println!("{:>6} {:>8} {:>10}", "J", "overlap", "vs clean");
    for (count, overlap) in [(40, 0.5), (80, 1.5), (120, 1.95), (200, 1.95), (300, 1.95)] {
        let basis = build_basis_set(&BasisLayout::single(count, overlap, 2, window)?)?;
        let trial = TrialProjection::fit(&noisy, &basis, window, DEFAULT_RCOND)?;
        let smooth = trial.reconstruct_many(grid.times())?;
        println!("{count:>6} {overlap:>8} {:>10.4}", relative_rms(&smooth, clean.data()));
    }
    Ok(())
}
