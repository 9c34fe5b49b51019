//! Weak-form DMD.
//!
//! The governing linear ODE `y' = A y` is multiplied by each test function
//! `φ_i` and integrated over the window; integrating by parts moves the time
//! derivative onto `φ_i`. With the data replaced by its trial expansion
//! `f(t) = Σ_j c_j ψ_j(t)` this gives `Y+ = A Y−` with
//!
//! ```text
//! Y−[:, i] = Σ_j c_j ⟨φ_i, ψ_j⟩
//! Y+[:, i] = φ_i(t2) f(t2) − φ_i(t1) f(t1) − Σ_j c_j ⟨φ_i', ψ_j⟩
//! ```
//!
//! after which the usual DMD reduction applies: thin SVD of `Y−`, projected
//! operator `Ã = Lᵀ Y+ R S⁻¹`, its eigenpairs, and the spatial modes
//! `Φ = Y+ R S⁻¹ W`.

use nalgebra::{DMatrix, DVector};

use crate::basis::{build_basis_set, BasisLayout, BasisSet};
use crate::error::{Error, Result};
use crate::linalg::{rcond_1norm, real_eigenpairs, sorted_svd};
use crate::projection::{TrialProjection, DEFAULT_RCOND};
use crate::quadrature::GaussLegendre;
use crate::types::{Complex64, ComplexSpectrum, SnapshotSet, Window};

/// Reciprocal-condition threshold below which an implicit step is refused.
pub const SINGULAR_STEP_RCOND: f64 = 1e-14;

/// Weak snapshot matrices, one column per test function.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakPair {
    pub y_plus: DMatrix<f64>,
    pub y_minus: DMatrix<f64>,
    pub test_basis: BasisSet,
    pub trial: TrialProjection,
}

/// Build `Y+` and `Y−` from a trial projection and a test basis.
pub fn assemble_weak_pair(trial: &TrialProjection, test_basis: &BasisSet) -> Result<WeakPair> {
    let window = trial.window();
    if let Some(w) = test_basis.window() {
        if w != window {
            return Err(Error::WindowMismatch);
        }
    }
    let psi = trial.basis().members();
    let phi = test_basis.members();
    let degree = 2 * (trial.basis().p() + test_basis.p()) as usize;
    let rule = GaussLegendre::exact_for_degree(degree);

    // mass[i, j] = ⟨φ_i, ψ_j⟩, stiff[i, j] = ⟨φ_i', ψ_j⟩
    let mut mass = DMatrix::zeros(phi.len(), psi.len());
    let mut stiff = DMatrix::zeros(phi.len(), psi.len());
    for (i, f) in phi.iter().enumerate() {
        for (j, g) in psi.iter().enumerate() {
            let Some((lo, hi)) = window.clip(f.a().max(g.a()), f.b().min(g.b())) else {
                continue;
            };
            let mut m = 0.0;
            let mut d = 0.0;
            for (t, w) in rule.mapped(lo, hi) {
                let gv = g.eval(t);
                m += w * f.eval(t) * gv;
                d += w * f.deriv(t) * gv;
            }
            mass[(i, j)] = m;
            stiff[(i, j)] = d;
        }
    }

    let c = trial.coefficients();
    let y_minus = c.transpose() * mass.transpose();
    let mut y_plus = -(c.transpose() * stiff.transpose());
    let f_start = trial.eval_unchecked(window.t1());
    let f_end = trial.eval_unchecked(window.t2());
    for (i, f) in phi.iter().enumerate() {
        let boundary = &f_end * f.eval(window.t2()) - &f_start * f.eval(window.t1());
        let mut col = y_plus.column_mut(i);
        col += boundary;
    }
    Ok(WeakPair {
        y_plus,
        y_minus,
        test_basis: test_basis.clone(),
        trial: trial.clone(),
    })
}

/// Rank-selection rule for the SVD of `Y−`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyCriterion {
    /// Retained share of the plain sum of singular values.
    #[default]
    Sum,
    /// Retained share of the sum of squared singular values.
    SumOfSquares,
}

/// Leading `r` singular triplets of `Y−`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdTruncation {
    /// Left singular vectors, `M × r`.
    pub l: DMatrix<f64>,
    /// Retained singular values, descending.
    pub s: Vec<f64>,
    /// Right singular vectors, `I × r`.
    pub r: DMatrix<f64>,
    pub energy: f64,
    /// All singular values of `Y−`, descending, numerical zeros set to 0.
    pub singular_values: Vec<f64>,
}

impl SvdTruncation {
    pub fn rank(&self) -> usize {
        self.s.len()
    }

    /// Sum of the singular values that were dropped.
    pub fn discarded(&self) -> f64 {
        self.singular_values[self.rank()..].iter().sum()
    }
}

/// Smallest `r` whose leading singular values reach `energy` of the total.
pub fn energy_rank(singular_values: &[f64], energy: f64, criterion: EnergyCriterion) -> usize {
    let weight = |s: f64| match criterion {
        EnergyCriterion::Sum => s,
        EnergyCriterion::SumOfSquares => s * s,
    };
    let total: f64 = singular_values.iter().map(|&s| weight(s)).sum();
    let mut acc = 0.0;
    for (k, &s) in singular_values.iter().enumerate() {
        acc += weight(s);
        if acc / total >= energy {
            return k + 1;
        }
    }
    singular_values.iter().filter(|&&s| s > 0.0).count().max(1)
}

/// Thin SVD of `Y−` truncated by the energy rule.
pub fn truncate_svd(y_minus: &DMatrix<f64>, energy: f64) -> Result<SvdTruncation> {
    truncate_svd_with(y_minus, energy, EnergyCriterion::Sum)
}

pub fn truncate_svd_with(
    y_minus: &DMatrix<f64>,
    energy: f64,
    criterion: EnergyCriterion,
) -> Result<SvdTruncation> {
    if !(energy > 0.0 && energy <= 1.0) {
        return Err(Error::InvalidArgument(format!("energy {energy} outside (0, 1]")));
    }
    if y_minus.is_empty() {
        return Err(Error::ZeroMatrix);
    }
    let svd = sorted_svd(y_minus);
    let s_max = svd.s[0];
    if !(s_max > 0.0) {
        return Err(Error::ZeroMatrix);
    }
    let floor = s_max * f64::EPSILON * y_minus.nrows().max(y_minus.ncols()) as f64;
    let singular_values: Vec<f64> = svd.s.iter().map(|&s| if s > floor { s } else { 0.0 }).collect();
    let rank = energy_rank(&singular_values, energy, criterion);
    Ok(SvdTruncation {
        l: svd.u.columns(0, rank).into_owned(),
        s: singular_values[..rank].to_vec(),
        r: svd.v.columns(0, rank).into_owned(),
        energy,
        singular_values,
    })
}

/// `R S⁻¹`, the right factor shared by `Ã` and the modes.
fn right_factor(svd: &SvdTruncation) -> DMatrix<f64> {
    let mut rs = svd.r.clone();
    for (k, s) in svd.s.iter().enumerate() {
        rs.column_mut(k).unscale_mut(*s);
    }
    rs
}

/// `Ã = Lᵀ Y+ R S⁻¹`.
pub fn reduced_operator(y_plus: &DMatrix<f64>, svd: &SvdTruncation) -> Result<DMatrix<f64>> {
    if y_plus.nrows() != svd.l.nrows() || y_plus.ncols() != svd.r.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "Y+ is {}x{} but the SVD factors expect {}x{}",
            y_plus.nrows(),
            y_plus.ncols(),
            svd.l.nrows(),
            svd.r.nrows()
        )));
    }
    Ok(svd.l.transpose() * y_plus * right_factor(svd))
}

/// Eigenvalues (spectrum order) and unit eigenvectors of a real matrix.
pub fn eigendecompose(a_tilde: &DMatrix<f64>) -> Result<(ComplexSpectrum, DMatrix<Complex64>)> {
    let (vals, w) = real_eigenpairs(a_tilde)?;
    // already in spectrum order; the stable sort keeps W aligned
    Ok((ComplexSpectrum::from_unsorted(vals), w))
}

/// `Φ = Y+ R S⁻¹ W`, columns normalized to unit length with the
/// largest-magnitude entry made real and positive.
pub fn spatial_modes(
    y_plus: &DMatrix<f64>,
    svd: &SvdTruncation,
    w: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    if w.nrows() != svd.rank() {
        return Err(Error::ShapeMismatch("eigenvector matrix does not match SVD rank".into()));
    }
    let base = (y_plus * right_factor(svd)).map(|v| Complex64::new(v, 0.0));
    let mut modes = base * w;
    for mut col in modes.column_iter_mut() {
        let norm = col.norm();
        if norm == 0.0 {
            continue;
        }
        let mut pivot = col[0];
        for z in col.iter() {
            if z.norm() > pivot.norm() {
                pivot = *z;
            }
        }
        let phase = pivot.conj() / Complex64::new(pivot.norm() * norm, 0.0);
        col.iter_mut().for_each(|z| *z *= phase);
    }
    Ok(modes)
}

/// Forecast stepping space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForecastSpace {
    /// Step `r × r` reduced coordinates `z = Lᵀ y`.
    #[default]
    Reduced,
    /// Step the full `M × M` operator `L Ã Lᵀ`.
    Full,
}

/// Options for [`fit_with_options`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub energy: f64,
    pub criterion: EnergyCriterion,
    pub rcond: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            energy: 0.999,
            criterion: EnergyCriterion::Sum,
            rcond: DEFAULT_RCOND,
        }
    }
}

/// A fitted weak-DMD model.
#[derive(Debug, Clone, PartialEq)]
pub struct WdmdModel {
    pub a_tilde: DMatrix<f64>,
    pub spectrum: ComplexSpectrum,
    /// Eigenvectors of `Ã`, columns ordered as the spectrum.
    pub eigvecs: DMatrix<Complex64>,
    /// Spatial modes, `M × r`, columns ordered as the spectrum.
    pub modes: DMatrix<Complex64>,
    pub svd: SvdTruncation,
    pub weak: WeakPair,
    pub window: Window,
}

impl WdmdModel {
    /// Reduce an assembled weak pair to a model.
    pub fn from_weak_pair(weak: WeakPair, energy: f64, criterion: EnergyCriterion) -> Result<Self> {
        let svd = truncate_svd_with(&weak.y_minus, energy, criterion)?;
        let a_tilde = reduced_operator(&weak.y_plus, &svd)?;
        let (spectrum, eigvecs) = eigendecompose(&a_tilde)?;
        let modes = spatial_modes(&weak.y_plus, &svd, &eigvecs)?;
        let window = weak.trial.window();
        Ok(Self {
            a_tilde,
            spectrum,
            eigvecs,
            modes,
            svd,
            weak,
            window,
        })
    }

    pub fn rank(&self) -> usize {
        self.svd.rank()
    }

    pub fn n_states(&self) -> usize {
        self.svd.l.nrows()
    }

    pub fn trial(&self) -> &TrialProjection {
        &self.weak.trial
    }

    /// Denoised reconstruction at `t` inside the window.
    pub fn reconstruct(&self, t: f64) -> Result<DVector<f64>> {
        self.weak.trial.reconstruct(t)
    }

    /// `L Ã Lᵀ`, the reduced operator lifted to the full state space.
    ///
    /// Allocates `M × M`; avoid for very large state dimensions.
    pub fn full_space_operator(&self) -> DMatrix<f64> {
        full_space_operator(self)
    }

    pub fn forecast(&self, y_start: &DVector<f64>, dt: f64, steps: usize, space: ForecastSpace) -> Result<DMatrix<f64>> {
        forecast(self, y_start, dt, steps, space)
    }
}

/// `L Ã L̄ᵀ` (real `L`, so the conjugate transpose is `Lᵀ`).
pub fn full_space_operator(model: &WdmdModel) -> DMatrix<f64> {
    &model.svd.l * &model.a_tilde * model.svd.l.transpose()
}

/// Repeated implicit-Euler steps `(I − dt Ã) z_{n+1} = z_n`.
///
/// Column `k` of the result is the state after `k + 1` steps. In reduced
/// space the component of `y_start` outside the span of `L` is dropped.
pub fn forecast(
    model: &WdmdModel,
    y_start: &DVector<f64>,
    dt: f64,
    steps: usize,
    space: ForecastSpace,
) -> Result<DMatrix<f64>> {
    if !(dt > 0.0) || steps == 0 {
        return Err(Error::InvalidArgument(format!(
            "forecast needs dt > 0 and steps >= 1 (dt = {dt}, steps = {steps})"
        )));
    }
    if y_start.len() != model.n_states() {
        return Err(Error::ShapeMismatch(format!(
            "initial state has length {} but the model has {} states",
            y_start.len(),
            model.n_states()
        )));
    }
    let l = &model.svd.l;
    let (op, mut state) = match space {
        ForecastSpace::Reduced => (model.a_tilde.clone(), l.transpose() * y_start),
        ForecastSpace::Full => (full_space_operator(model), y_start.clone()),
    };
    let n = op.nrows();
    let step = DMatrix::identity(n, n) - op * dt;
    let rcond = rcond_1norm(&step);
    if rcond < SINGULAR_STEP_RCOND {
        return Err(Error::SingularStep { rcond });
    }
    let lu = step.lu();
    let mut out = DMatrix::zeros(model.n_states(), steps);
    for k in 0..steps {
        state = lu.solve(&state).ok_or(Error::SingularStep { rcond })?;
        let full = match space {
            ForecastSpace::Reduced => l * &state,
            ForecastSpace::Full => state.clone(),
        };
        out.set_column(k, &full);
    }
    Ok(out)
}

/// End-to-end weak-DMD with default options apart from `energy`.
pub fn fit(
    snapshots: &SnapshotSet,
    trial_layout: &BasisLayout,
    test_layout: &BasisLayout,
    window: Window,
    energy: f64,
) -> Result<WdmdModel> {
    let options = FitOptions {
        energy,
        ..FitOptions::default()
    };
    fit_with_options(snapshots, trial_layout, test_layout, window, &options)
}

pub fn fit_with_options(
    snapshots: &SnapshotSet,
    trial_layout: &BasisLayout,
    test_layout: &BasisLayout,
    window: Window,
    options: &FitOptions,
) -> Result<WdmdModel> {
    if trial_layout.window != window || test_layout.window != window {
        return Err(Error::WindowMismatch);
    }
    let trial_basis = build_basis_set(trial_layout)?;
    let test_basis = build_basis_set(test_layout)?;
    let trial = TrialProjection::fit(snapshots, &trial_basis, window, options.rcond)?;
    let weak = assemble_weak_pair(&trial, &test_basis)?;
    WdmdModel::from_weak_pair(weak, options.energy, options.criterion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BumpBasis;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn model_from_operator(a: DMatrix<f64>, l: DMatrix<f64>) -> WdmdModel {
        let r = a.nrows();
        let (spectrum, eigvecs) = eigendecompose(&a).unwrap();
        let w = Window::new(0.0, 1.0).unwrap();
        let basis = BasisSet::new(vec![BumpBasis::new(0.0, 1.0, 1).unwrap()]).unwrap();
        let trial = TrialProjection::from_coefficients(basis.clone(), DMatrix::zeros(1, l.nrows()), w).unwrap();
        let svd = SvdTruncation {
            l: l.clone(),
            s: vec![1.0; r],
            r: DMatrix::identity(r, r),
            energy: 1.0,
            singular_values: vec![1.0; r],
        };
        WdmdModel {
            modes: DMatrix::zeros(l.nrows(), r),
            a_tilde: a,
            spectrum,
            eigvecs,
            svd,
            weak: WeakPair {
                y_plus: DMatrix::zeros(l.nrows(), r),
                y_minus: DMatrix::zeros(l.nrows(), r),
                test_basis: basis,
                trial,
            },
            window: w,
        }
    }

    #[test]
    fn energy_rule_examples() {
        assert_eq!(energy_rank(&[3.0, 1.0], 0.7, EnergyCriterion::Sum), 1);
        assert_eq!(energy_rank(&[3.0, 1.0], 0.8, EnergyCriterion::Sum), 2);
        assert_eq!(energy_rank(&[3.0, 1.0, 0.0], 1.0, EnergyCriterion::Sum), 2);
        // squares: 9/10 = 0.9
        assert_eq!(energy_rank(&[3.0, 1.0], 0.8, EnergyCriterion::SumOfSquares), 1);
    }

    #[test]
    fn truncate_diagonal() {
        let y = DMatrix::from_row_slice(2, 3, &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(truncate_svd(&y, 0.7).unwrap().rank(), 1);
        assert_eq!(truncate_svd(&y, 0.8).unwrap().rank(), 2);
        assert_eq!(truncate_svd(&y, 1.0).unwrap().rank(), 2);
    }

    #[test]
    fn truncate_zero_matrix() {
        assert_eq!(truncate_svd(&DMatrix::zeros(2, 3), 0.9), Err(Error::ZeroMatrix));
        assert!(truncate_svd(&DMatrix::identity(2, 2), 0.0).is_err());
    }

    #[test]
    fn scalar_reduced_operator() {
        let svd = truncate_svd(&DMatrix::from_element(1, 1, 2.0), 1.0).unwrap();
        let a = reduced_operator(&DMatrix::from_element(1, 1, 6.0), &svd).unwrap();
        assert!((a[(0, 0)] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn identity_dynamics() {
        let y = DMatrix::from_row_slice(3, 4, &[1.0, 2.0, 0.0, 1.0, 0.5, -1.0, 3.0, 0.0, 2.0, 1.0, 1.0, -2.0]);
        let svd = truncate_svd(&y, 1.0).unwrap();
        let a = reduced_operator(&y, &svd).unwrap();
        let (spec, _) = eigendecompose(&a).unwrap();
        for z in spec.eigenvalues() {
            assert!((z - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn companion_oscillator_spectrum() {
        let omega2 = 169.0 * 29.0 / 400.0;
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -omega2, -0.1]);
        let (spec, w) = eigendecompose(&a).unwrap();
        assert!((spec.eigenvalues()[0] - c(-0.05, 3.5)).norm() < 1e-12);
        assert!((spec.eigenvalues()[1] - c(-0.05, -3.5)).norm() < 1e-12);
        let ac = a.map(|v| c(v, 0.0));
        for k in 0..2 {
            let res = &ac * w.column(k) - w.column(k) * spec.eigenvalues()[k];
            assert!(res.norm() <= 1e-8 * a.norm());
        }
    }

    #[test]
    fn small_spectra() {
        let (s, _) = eigendecompose(&DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -1.0])).unwrap();
        assert_eq!(s.eigenvalues(), &[c(2.0, 0.0), c(-1.0, 0.0)]);
        let (s, _) = eigendecompose(&DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])).unwrap();
        assert!((s.eigenvalues()[0] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((s.eigenvalues()[1] - c(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn eigendecompose_rejects_non_finite() {
        let a = DMatrix::from_row_slice(1, 1, &[f64::NAN]);
        assert_eq!(eigendecompose(&a).unwrap_err(), Error::EigFailure);
    }

    #[test]
    fn rank_one_modes() {
        let y_plus = DMatrix::from_row_slice(2, 1, &[3.0, -4.0]);
        let svd = truncate_svd(&DMatrix::from_row_slice(2, 1, &[1.0, 0.0]), 1.0).unwrap();
        let w = DMatrix::from_element(1, 1, c(1.0, 0.0));
        let phi = spatial_modes(&y_plus, &svd, &w).unwrap();
        // unit norm, largest entry (-4) made positive
        assert!((phi[(0, 0)] - c(-0.6, 0.0)).norm() < 1e-15);
        assert!((phi[(1, 0)] - c(0.8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn full_space_identity_l() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, -3.0, 0.5]);
        let m = model_from_operator(a.clone(), DMatrix::identity(2, 2));
        assert_eq!(full_space_operator(&m), a);
    }

    #[test]
    fn full_space_rank_one() {
        let m = model_from_operator(DMatrix::from_element(1, 1, -0.7), DMatrix::from_row_slice(2, 1, &[1.0, 0.0]));
        let f = full_space_operator(&m);
        assert_eq!(f, DMatrix::from_row_slice(2, 2, &[-0.7, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn scalar_forecast() {
        let lambda = -0.3;
        let dt = 0.1;
        let m = model_from_operator(DMatrix::from_element(1, 1, lambda), DMatrix::identity(1, 1));
        let y = DVector::from_element(1, 1.0);
        let out = m.forecast(&y, dt, 1, ForecastSpace::Reduced).unwrap();
        assert!((out[(0, 0)] - 1.0 / (1.0 - dt * lambda)).abs() < 1e-15);
        let out = m.forecast(&y, dt, 2, ForecastSpace::Full).unwrap();
        assert!((out[(0, 1)] - (1.0 / (1.0 - dt * lambda)).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn stationary_forecast() {
        let m = model_from_operator(DMatrix::zeros(1, 1), DMatrix::identity(1, 1));
        let out = m.forecast(&DVector::from_element(1, 2.5), 0.5, 5, ForecastSpace::Reduced).unwrap();
        assert!(out.iter().all(|&v| v == 2.5));
    }

    #[test]
    fn resonant_step_is_singular() {
        let m = model_from_operator(DMatrix::from_element(1, 1, 2.0), DMatrix::identity(1, 1));
        let err = m.forecast(&DVector::from_element(1, 1.0), 0.5, 1, ForecastSpace::Reduced).unwrap_err();
        assert!(matches!(err, Error::SingularStep { .. }));
    }

    #[test]
    fn forecast_argument_checks() {
        let m = model_from_operator(DMatrix::zeros(1, 1), DMatrix::identity(1, 1));
        let y = DVector::from_element(1, 1.0);
        assert!(m.forecast(&y, 0.0, 1, ForecastSpace::Reduced).is_err());
        assert!(m.forecast(&y, 0.1, 0, ForecastSpace::Reduced).is_err());
        assert!(m.forecast(&DVector::zeros(3), 0.1, 1, ForecastSpace::Reduced).is_err());
    }

    #[test]
    fn interior_test_functions_have_no_boundary_term() {
        let w = Window::new(0.0, 4.0).unwrap();
        let trial_basis = BasisSet::new(vec![BumpBasis::new(-1.0, 2.0, 2).unwrap(), BumpBasis::new(1.0, 5.0, 2).unwrap()]).unwrap();
        let coeffs = DMatrix::from_row_slice(2, 1, &[1.0, -2.0]);
        let trial = TrialProjection::from_coefficients(trial_basis, coeffs, w).unwrap();
        let test = BasisSet::new(vec![BumpBasis::new(0.5, 3.5, 2).unwrap()]).unwrap();
        let pair = assemble_weak_pair(&trial, &test).unwrap();
        // with no boundary term, Y+ is exactly -Σ c_j ⟨φ', ψ_j⟩
        let rule = GaussLegendre::new(12);
        let phi = test.members()[0];
        let mut expect = 0.0;
        for (j, psi) in trial.basis().members().iter().enumerate() {
            let v = rule.integrate(psi.a().max(0.5), psi.b().min(3.5), |t| phi.deriv(t) * psi.eval(t));
            expect -= trial.coefficients()[(j, 0)] * v;
        }
        assert!((pair.y_plus[(0, 0)] - expect).abs() < 1e-13);
    }

    #[test]
    fn zero_trial_gives_zero_pair() {
        let w = Window::new(0.0, 1.0).unwrap();
        let basis = BasisSet::new(vec![BumpBasis::new(-0.5, 0.5, 2).unwrap(), BumpBasis::new(0.5, 1.5, 2).unwrap()]).unwrap();
        let trial = TrialProjection::from_coefficients(basis.clone(), DMatrix::zeros(2, 2), w).unwrap();
        let pair = assemble_weak_pair(&trial, &basis).unwrap();
        assert!(pair.y_plus.iter().all(|&v| v == 0.0));
        assert!(pair.y_minus.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn window_mismatch_detected() {
        let w = Window::new(0.0, 1.0).unwrap();
        let basis = BasisSet::new(vec![BumpBasis::new(0.0, 1.0, 2).unwrap()]).unwrap();
        let trial = TrialProjection::from_coefficients(basis.clone(), DMatrix::zeros(1, 1), w).unwrap();
        let other = basis.on_window(Window::new(0.0, 2.0).unwrap());
        assert_eq!(assemble_weak_pair(&trial, &other).unwrap_err(), Error::WindowMismatch);
    }
}
