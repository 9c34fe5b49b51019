//! Synthetic problems with known spectra, noise injection and error metrics.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::basis::BasisLayout;
use crate::error::{Error, Result};
use crate::linalg::real_eigenpairs;
use crate::quadrature::integrate_adaptive;
use crate::types::{Complex64, ComplexSpectrum, SnapshotSet, TimeGrid, Window};
use crate::wdmd::{fit_with_options, FitOptions};

/// Largest admissible eigenvector-matrix condition number in [`sample_trajectory`].
pub const MAX_EIGENVECTOR_CONDITION: f64 = 1e12;

/// Damped oscillator parameters: `ω = 13√29 / 20`, `α = 1/10`.
pub const TOY_OMEGA_SQUARED: f64 = 169.0 * 29.0 / 400.0;
pub const TOY_ALPHA: f64 = 0.1;

/// Linear system `y' = A y`, `y(0) = y0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystemSpec {
    pub a: DMatrix<f64>,
    pub y0: DVector<f64>,
    pub label: String,
}

impl LinearSystemSpec {
    pub fn new(a: DMatrix<f64>, y0: DVector<f64>, label: impl Into<String>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() != y0.len() {
            return Err(Error::ShapeMismatch("generator must be square and match y0".into()));
        }
        if a.iter().chain(y0.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteData { row: 0, col: 0 });
        }
        Ok(Self {
            a,
            y0,
            label: label.into(),
        })
    }

    /// Generator eigenvalues in spectrum order.
    pub fn spectrum(&self) -> Result<ComplexSpectrum> {
        let (vals, _) = real_eigenpairs(&self.a)?;
        Ok(ComplexSpectrum::from_unsorted(vals))
    }

    pub fn dim(&self) -> usize {
        self.y0.len()
    }
}

/// The two-state damped oscillator with eigenvalues `−1/20 ± 7/2 i`.
pub fn toy_oscillator_spec() -> LinearSystemSpec {
    let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -TOY_OMEGA_SQUARED, -TOY_ALPHA]);
    LinearSystemSpec::new(a, DVector::from_row_slice(&[1.0, 0.0]), "toy-oscillator").expect("valid toy system")
}

/// Exact toy-oscillator eigenvalues `(−α ± √(α² − 4ω²)) / 2`.
pub fn toy_exact_eigenvalues() -> [Complex64; 2] {
    let disc = Complex64::new(TOY_ALPHA * TOY_ALPHA - 4.0 * TOY_OMEGA_SQUARED, 0.0).sqrt();
    let alpha = Complex64::new(TOY_ALPHA, 0.0);
    let a = (-alpha + disc) / 2.0;
    let b = (-alpha - disc) / 2.0;
    if a.im >= b.im {
        [a, b]
    } else {
        [b, a]
    }
}

/// Closed-form toy solution `(y0(t), y1(t))` in its hyperbolic form,
/// evaluated in complex arithmetic.
pub fn toy_closed_form(t: f64) -> [f64; 2] {
    let alpha = TOY_ALPHA;
    let s = Complex64::new(alpha * alpha - 4.0 * TOY_OMEGA_SQUARED, 0.0).sqrt();
    let arg = s * (0.5 * t);
    let decay = (-alpha * t / 2.0).exp();
    let y0 = (arg.sinh() * alpha / s + arg.cosh()) * decay;
    let y1 = -(arg.sinh() / s) * (2.0 * TOY_OMEGA_SQUARED * decay);
    [y0.re, y1.re]
}

/// Two-state system with real eigenvalues `l1`, `l2` and a fixed,
/// well-conditioned eigenbasis. Both modes are excited by `y0`.
pub fn two_mode_surrogate(l1: f64, l2: f64, label: impl Into<String>) -> LinearSystemSpec {
    let v = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.5, -1.0]);
    let v_inv = v.clone().try_inverse().expect("invertible eigenbasis");
    let a = &v * DMatrix::from_diagonal(&DVector::from_row_slice(&[l1, l2])) * v_inv;
    LinearSystemSpec::new(a, DVector::from_row_slice(&[2.0, 0.0]), label).expect("valid surrogate")
}

/// Scalar decay `y' = −y`, `y(0) = 1`.
pub fn decay_spec() -> LinearSystemSpec {
    LinearSystemSpec::new(DMatrix::from_element(1, 1, -1.0), DVector::from_element(1, 1.0), "decay")
        .expect("valid decay system")
}

/// Stratified random samples on `[start, end]`: one uniform draw per equal
/// cell, endpoints included.
pub fn random_grid(start: f64, end: f64, n: usize, seed: u64) -> Result<TimeGrid> {
    if n < 2 {
        return Err(Error::GridTooShort { len: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::with_capacity(n);
    t.push(start);
    let cells = n - 2;
    let h = (end - start) / cells.max(1) as f64;
    for k in 0..cells {
        let u: f64 = rng.random_range(0.05..0.95);
        t.push(start + h * (k as f64 + u));
    }
    t.push(end);
    TimeGrid::new(t)
}

/// `y(t_n) = V e^{Λ t_n} V⁻¹ y0` at every grid time.
pub fn sample_trajectory(spec: &LinearSystemSpec, grid: &TimeGrid) -> Result<SnapshotSet> {
    let (vals, v) = real_eigenpairs(&spec.a)?;
    let svals = v.clone().svd(false, false).singular_values;
    let (s_max, s_min) = svals
        .iter()
        .fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    let cond = s_max / s_min;
    if !(cond < MAX_EIGENVECTOR_CONDITION) {
        return Err(Error::NonDiagonalizable { cond });
    }
    let y0c = spec.y0.map(|v| Complex64::new(v, 0.0));
    let coef = v.clone().lu().solve(&y0c).ok_or(Error::NonDiagonalizable { cond })?;
    let m = spec.dim();
    let mut x = DMatrix::zeros(m, grid.len());
    for (n, &t) in grid.times().iter().enumerate() {
        let weights = DVector::from_iterator(vals.len(), vals.iter().zip(coef.iter()).map(|(l, c)| (l * t).exp() * c));
        let y = &v * weights;
        let scale = y.iter().map(|z| z.re.abs()).fold(1.0f64, f64::max);
        if let Some(z) = y.iter().find(|z| z.im.abs() > 1e-10 * scale) {
            return Err(Error::InvalidArgument(format!(
                "trajectory has an imaginary residue of {:e} at t = {t}",
                z.im
            )));
        }
        for i in 0..m {
            x[(i, n)] = y[i].re;
        }
    }
    SnapshotSet::new(grid.clone(), x)
}

/// How noise scales with the signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseMode {
    /// `x ← y (1 + magnitude · g)`.
    #[default]
    Relative,
    /// `x ← y + magnitude · g`.
    Additive,
}

/// Seeded Gaussian measurement noise, `g ~ Normal(0, sigma²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub relative_magnitude: f64,
    pub seed: u64,
    pub mode: NoiseMode,
}

impl NoiseSpec {
    pub fn relative(sigma: f64, relative_magnitude: f64, seed: u64) -> Self {
        Self {
            sigma,
            relative_magnitude,
            seed,
            mode: NoiseMode::Relative,
        }
    }
}

pub fn add_noise(snapshots: &SnapshotSet, noise: &NoiseSpec) -> Result<SnapshotSet> {
    if !(noise.sigma >= 0.0 && noise.relative_magnitude >= 0.0) {
        return Err(Error::InvalidArgument("noise scales must be non-negative".into()));
    }
    if noise.sigma == 0.0 || noise.relative_magnitude == 0.0 {
        return Ok(snapshots.clone());
    }
    let normal = Normal::new(0.0, noise.sigma).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let mut x = snapshots.data().clone();
    for n in 0..x.ncols() {
        for m in 0..x.nrows() {
            let g = normal.sample(&mut rng);
            let y = x[(m, n)];
            x[(m, n)] = match noise.mode {
                NoiseMode::Relative => y * (1.0 + noise.relative_magnitude * g),
                NoiseMode::Additive => y + noise.relative_magnitude * g,
            };
        }
    }
    SnapshotSet::new(snapshots.grid().clone(), x)
}

/// `|λ − λ̃|`.
pub fn eigenvalue_error(lambda_true: Complex64, lambda_est: Complex64) -> f64 {
    let d = lambda_true - lambda_est;
    (d.re * d.re + d.im * d.im).sqrt()
}

/// Per-time relative 2-norm error `‖U − Ũ‖ / ‖U‖`.
pub fn forecast_error(truth: &SnapshotSet, predicted: &SnapshotSet) -> Result<Vec<f64>> {
    if truth.times() != predicted.times() || truth.n_states() != predicted.n_states() {
        return Err(Error::GridMismatch);
    }
    (0..truth.n_samples())
        .map(|n| {
            let u = truth.data().column(n);
            let norm = u.norm();
            if norm == 0.0 {
                return Err(Error::ZeroNorm { index: n });
            }
            Ok((u - predicted.data().column(n)).norm() / norm)
        })
        .collect()
}

/// Mean of `errors[range]`.
pub fn mean_error(errors: &[f64], range: std::ops::Range<usize>) -> Result<f64> {
    if range.is_empty() || range.end > errors.len() {
        return Err(Error::InvalidArgument(format!(
            "averaging range {range:?} invalid for {} errors",
            errors.len()
        )));
    }
    let len = range.len() as f64;
    Ok(errors[range].iter().sum::<f64>() / len)
}

/// Spectrum of `Ã = Y+ (Y−)⁻¹` when the exact toy solutions serve as both
/// trial and test functions on `[0, t2]`.
pub fn table1_oracle(t2: f64) -> Result<ComplexSpectrum> {
    if !(t2 > 0.0) {
        return Err(Error::InvalidArgument(format!("t2 must be positive, got {t2}")));
    }
    let y = |k: usize, t: f64| toy_closed_form(t)[k];
    let dy = |k: usize, t: f64| {
        let [y0, y1] = toy_closed_form(t);
        match k {
            0 => y1,
            _ => -TOY_OMEGA_SQUARED * y0 - TOY_ALPHA * y1,
        }
    };
    const TOL: f64 = 1e-12;
    let pieces = t2.ceil() as usize;
    let (start, end) = (toy_closed_form(0.0), toy_closed_form(t2));
    let mut y_minus = DMatrix::zeros(2, 2);
    let mut y_plus = DMatrix::zeros(2, 2);
    for m in 0..2 {
        for i in 0..2 {
            y_minus[(m, i)] = integrate_adaptive(|t| y(m, t) * y(i, t), 0.0, t2, TOL, pieces);
            let weak_deriv = integrate_adaptive(|t| dy(i, t) * y(m, t), 0.0, t2, TOL, pieces);
            y_plus[(m, i)] = end[m] * end[i] - start[m] * start[i] - weak_deriv;
        }
    }
    let inv = y_minus.try_inverse().ok_or(Error::SingularYMinus)?;
    if inv.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularYMinus);
    }
    let (vals, _) = real_eigenpairs(&(y_plus * inv))?;
    Ok(ComplexSpectrum::from_unsorted(vals))
}

/// One row of a test-space convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub test_size: usize,
    pub spectrum: ComplexSpectrum,
}

/// Test-basis shape used for every size in a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestTemplate {
    pub p: u32,
    pub overlap: f64,
}

/// Refit with a growing single-tier test basis, all else fixed.
pub fn convergence_sweep(
    snapshots: &SnapshotSet,
    trial_layout: &BasisLayout,
    test_sizes: &[usize],
    template: TestTemplate,
    window: Window,
    options: &FitOptions,
) -> Result<Vec<SweepRow>> {
    if test_sizes.is_empty() || test_sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("test sizes must be nonempty and increasing".into()));
    }
    test_sizes
        .iter()
        .map(|&size| {
            let test = BasisLayout::single(size, template.overlap, template.p, window)?;
            let model = fit_with_options(snapshots, trial_layout, &test, window, options)?;
            Ok(SweepRow {
                test_size: size,
                spectrum: model.spectrum,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_parameters() {
        let spec = toy_oscillator_spec();
        assert_eq!(spec.a[(0, 0)], 0.0);
        assert_eq!(spec.y0.as_slice(), &[1.0, 0.0]);
        let s = spec.spectrum().unwrap();
        assert!((s.eigenvalues()[0] - Complex64::new(-0.05, 3.5)).norm() < 1e-12);
        assert!((s.eigenvalues()[1] - Complex64::new(-0.05, -3.5)).norm() < 1e-12);
        let exact = toy_exact_eigenvalues();
        assert!((exact[0] - Complex64::new(-0.05, 3.5)).norm() < 1e-14);
    }

    #[test]
    fn trajectory_initial_condition() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let s = sample_trajectory(&toy_oscillator_spec(), &grid).unwrap();
        assert!((s.data()[(0, 0)] - 1.0).abs() < 1e-14);
        assert!(s.data()[(1, 0)].abs() < 1e-14);
    }

    #[test]
    fn scalar_exponential() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let s = sample_trajectory(&decay_spec(), &grid).unwrap();
        assert!((s.data()[(0, 1)] - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn trajectory_matches_closed_form() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let s = sample_trajectory(&toy_oscillator_spec(), &grid).unwrap();
        let [y0, y1] = toy_closed_form(1.0);
        assert!((s.data()[(0, 1)] - y0).abs() < 1e-10);
        assert!((s.data()[(1, 1)] - y1).abs() < 1e-10);
    }

    #[test]
    fn defective_generator_rejected() {
        let spec = LinearSystemSpec::new(
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]),
            DVector::from_row_slice(&[1.0, 1.0]),
            "jordan",
        )
        .unwrap();
        let grid = TimeGrid::uniform(0.0, 1.0, 3).unwrap();
        assert!(matches!(sample_trajectory(&spec, &grid), Err(Error::NonDiagonalizable { .. })));
    }

    #[test]
    fn surrogate_spectrum() {
        let s = two_mode_surrogate(0.007565, -0.270383, "super").spectrum().unwrap();
        assert!((s.eigenvalues()[0].re - 0.007565).abs() < 1e-14);
        assert!((s.eigenvalues()[1].re + 0.270383).abs() < 1e-14);
    }

    #[test]
    fn zero_sigma_is_identity() {
        let grid = TimeGrid::uniform(0.0, 1.0, 5).unwrap();
        let s = sample_trajectory(&toy_oscillator_spec(), &grid).unwrap();
        assert_eq!(add_noise(&s, &NoiseSpec::relative(0.0, 0.15, 1)).unwrap(), s);
    }

    #[test]
    fn noise_is_seeded() {
        let grid = TimeGrid::uniform(0.0, 1.0, 50).unwrap();
        let s = sample_trajectory(&toy_oscillator_spec(), &grid).unwrap();
        let spec = NoiseSpec::relative(0.2, 0.15, 42);
        assert_eq!(add_noise(&s, &spec).unwrap(), add_noise(&s, &spec).unwrap());
        let other = NoiseSpec::relative(0.2, 0.15, 43);
        assert_ne!(add_noise(&s, &spec).unwrap(), add_noise(&s, &other).unwrap());
    }

    #[test]
    fn relative_noise_std() {
        let n = 100_000;
        let grid = TimeGrid::uniform(0.0, 1.0, n).unwrap();
        let s = SnapshotSet::new(grid, DMatrix::from_element(1, n, 1.0)).unwrap();
        let noisy = add_noise(&s, &NoiseSpec::relative(0.2, 0.15, 7)).unwrap();
        let d: Vec<f64> = noisy.data().iter().map(|v| v - 1.0).collect();
        let mean = d.iter().sum::<f64>() / n as f64;
        let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((var.sqrt() - 0.03).abs() < 0.003);
    }

    #[test]
    fn additive_noise_ignores_signal_level() {
        let grid = TimeGrid::uniform(0.0, 1.0, 4).unwrap();
        let s = SnapshotSet::new(grid, DMatrix::zeros(1, 4)).unwrap();
        let spec = NoiseSpec {
            mode: NoiseMode::Additive,
            ..NoiseSpec::relative(1.0, 0.5, 3)
        };
        let noisy = add_noise(&s, &spec).unwrap();
        assert!(noisy.data().iter().any(|&v| v != 0.0));
        let rel = add_noise(&s, &NoiseSpec::relative(1.0, 0.5, 3)).unwrap();
        assert!(rel.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn eigenvalue_error_examples() {
        let e = eigenvalue_error(Complex64::new(0.03759991, 0.0), Complex64::new(0.0251, 0.0));
        assert_eq!((e * 1e4).round() / 1e4, 0.0125);
        assert_eq!(eigenvalue_error(Complex64::new(1.0, 2.0), Complex64::new(1.0, 2.0)), 0.0);
        assert!((eigenvalue_error(Complex64::new(0.0, 0.0), Complex64::new(3.0, 4.0)) - 5.0).abs() < 1e-15);
    }

    fn single(t: &[f64], cols: &[f64], m: usize) -> SnapshotSet {
        let grid = TimeGrid::new(t.to_vec()).unwrap();
        SnapshotSet::new(grid, DMatrix::from_column_slice(m, t.len(), cols)).unwrap()
    }

    #[test]
    fn forecast_error_examples() {
        let truth = single(&[0.0, 1.0], &[1.0, 2.0, 3.0, 4.0], 2);
        assert_eq!(forecast_error(&truth, &truth).unwrap(), vec![0.0, 0.0]);
        let doubled = single(&[0.0, 1.0], &[2.0, 4.0, 6.0, 8.0], 2);
        assert_eq!(forecast_error(&truth, &doubled).unwrap(), vec![1.0, 1.0]);
        let t = single(&[0.0, 1.0], &[3.0, 4.0, 3.0, 4.0], 2);
        let p = single(&[0.0, 1.0], &[3.0, 0.0, 3.0, 4.0], 2);
        assert!((forecast_error(&t, &p).unwrap()[0] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn forecast_error_failures() {
        let a = single(&[0.0, 1.0], &[0.0, 1.0], 1);
        let b = single(&[0.0, 2.0], &[0.0, 1.0], 1);
        assert_eq!(forecast_error(&a, &b).unwrap_err(), Error::GridMismatch);
        assert_eq!(forecast_error(&a, &a).unwrap_err(), Error::ZeroNorm { index: 0 });
        assert!((mean_error(&[1.0, 2.0, 3.0], 1..3).unwrap() - 2.5).abs() < 1e-15);
        assert!(mean_error(&[1.0], 0..2).is_err());
    }

    #[test]
    fn oracle_rejects_nonpositive_window() {
        assert!(table1_oracle(0.0).is_err());
    }

    #[test]
    fn random_grid_is_seeded_and_sorted() {
        let a = random_grid(0.0, 10.0, 100, 7).unwrap();
        let b = random_grid(0.0, 10.0, 100, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.start(), 0.0);
        assert_eq!(a.end(), 10.0);
        assert!(a.spacing_ratio() > 1.5);
    }
}
