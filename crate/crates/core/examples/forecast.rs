//! Fit on [0, 20] and extrapolate with implicit Euler steps, in reduced and
//! full coordinates.
//!
//!     cargo run --release --example forecast

use nalgebra::DVector;
use weak_dmd::bench::{random_grid, sample_trajectory, toy_closed_form, toy_oscillator_spec};
use weak_dmd::{fit, BasisLayout, ForecastSpace, Window};

fn main() -> weak_dmd::Result<()> {
    let grid = random_grid(0.0, 20.0, 2000, 3)?;
    let snapshots = sample_trajectory(&toy_oscillator_spec(), &grid)?;
    let window = Window::covering(&grid);
    let model = fit(
        &snapshots,
        &BasisLayout::single(80, 1.95, 2, window)?,
        &BasisLayout::single(160, 1.95, 2, window)?,
        window,
        0.9999,
    )?;

    let t0 = window.t2();
    let y0 = DVector::from_row_slice(&toy_closed_form(t0));
    let (dt, steps) = (1e-3, 1000);
    let reduced = model.forecast(&y0, dt, steps, ForecastSpace::Reduced)?;
    let full = model.forecast(&y0, dt, steps, ForecastSpace::Full)?;
    println!("reduced vs full: {:.2e}", (&reduced - &full).norm());

    println!("{:>8} {:>12} {:>12} {:>10}", "t", "y0", "exact", "rel err");
    for k in (99..steps).step_by(100) {
        let t = t0 + (k + 1) as f64 * dt;
        let exact = DVector::from_row_slice(&toy_closed_form(t));
        let err = (reduced.column(k) - &exact).norm() / exact.norm();
        println!("{t:>8.3} {:>12.6} {:>12.6} {err:>10.2e}", reduced[(0, k)], exact[0]);
    }
    Ok(())
}
