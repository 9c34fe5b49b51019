//! Least-squares projection of sampled data onto the trial basis.
//!
//! Data–basis integrals use the trapezoid rule on the sample grid (the data
//! only exist at the samples); basis–basis integrals are exact Gauss–Legendre.

use nalgebra::{DMatrix, DVector};

use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::linalg::pinv_solve;
use crate::quadrature::GaussLegendre;
use crate::types::{SnapshotSet, Window};

pub const DEFAULT_RCOND: f64 = 1e-10;

/// Symmetric positive semidefinite matrix of trial-basis inner products.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(DMatrix<f64>);

impl GramMatrix {
    pub fn from_matrix(g: DMatrix<f64>) -> Result<Self> {
        if g.nrows() != g.ncols() {
            return Err(Error::ShapeMismatch("Gram matrix must be square".into()));
        }
        Ok(Self(g))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// Samples restricted to a window, with the window endpoints added by
/// linear interpolation when they fall between samples.
struct WindowSamples {
    t: Vec<f64>,
    x: DMatrix<f64>,
}

impl WindowSamples {
    fn new(snapshots: &SnapshotSet, window: Window) -> Result<Self> {
        window.check_within(snapshots.grid())?;
        let times = snapshots.times();
        let data = snapshots.data();
        let first = times.partition_point(|&t| t < window.t1());
        let last = times.partition_point(|&t| t <= window.t2());
        if first >= last {
            return Err(Error::EmptyWindow {
                t1: window.t1(),
                t2: window.t2(),
            });
        }
        let mut t = Vec::with_capacity(last - first + 2);
        let mut cols: Vec<DVector<f64>> = Vec::with_capacity(last - first + 2);
        if times[first] > window.t1() {
            t.push(window.t1());
            cols.push(interp_column(times, data, window.t1()));
        }
        for n in first..last {
            t.push(times[n]);
            cols.push(data.column(n).into_owned());
        }
        if times[last - 1] < window.t2() {
            t.push(window.t2());
            cols.push(interp_column(times, data, window.t2()));
        }
        Ok(Self {
            t,
            x: DMatrix::from_columns(&cols),
        })
    }

    fn interp(&self, t: f64) -> DVector<f64> {
        interp_column(&self.t, &self.x, t)
    }
}

fn interp_column(times: &[f64], data: &DMatrix<f64>, t: f64) -> DVector<f64> {
    let k = times.partition_point(|&s| s <= t);
    if k == 0 {
        return data.column(0).into_owned();
    }
    if k >= times.len() {
        return data.column(times.len() - 1).into_owned();
    }
    let (ta, tb) = (times[k - 1], times[k]);
    if t == ta {
        return data.column(k - 1).into_owned();
    }
    let w = (t - ta) / (tb - ta);
    data.column(k - 1) * (1.0 - w) + data.column(k) * w
}

/// `(j, m)` entry approximates the window integral of `ψ_j · x_m`
/// (trapezoid rule on the samples, clipped to the support of `ψ_j`).
pub fn data_inner_products(
    snapshots: &SnapshotSet,
    basis: &BasisSet,
    window: Window,
) -> Result<DMatrix<f64>> {
    let samples = WindowSamples::new(snapshots, window)?;
    let m = snapshots.n_states();
    let mut out = DMatrix::zeros(basis.len(), m);
    for (j, psi) in basis.members().iter().enumerate() {
        let Some((lo, hi)) = window.clip(psi.a(), psi.b()) else {
            continue;
        };
        let start = samples.t.partition_point(|&t| t <= lo);
        let end = samples.t.partition_point(|&t| t < hi);
        let mut prev_t = lo;
        let mut prev = samples.interp(lo) * psi.eval(lo);
        let mut acc = DVector::zeros(m);
        for n in start..end {
            let tn = samples.t[n];
            let cur = samples.x.column(n) * psi.eval(tn);
            acc += (&prev + &cur) * (0.5 * (tn - prev_t));
            prev_t = tn;
            prev = cur;
        }
        let last = samples.interp(hi) * psi.eval(hi);
        acc += (&prev + &last) * (0.5 * (hi - prev_t));
        out.set_row(j, &acc.transpose());
    }
    Ok(out)
}

/// Window integrals of `ψ_i ψ_j`, exact up to roundoff.
pub fn gram_matrix(basis: &BasisSet, window: Window) -> GramMatrix {
    let rule = GaussLegendre::exact_for_degree(4 * basis.p() as usize);
    gram_matrix_with_rule(basis, window, &rule)
}

/// [`gram_matrix`] with a caller-chosen rule.
pub fn gram_matrix_with_rule(basis: &BasisSet, window: Window, rule: &GaussLegendre) -> GramMatrix {
    let members = basis.members();
    let n = members.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let (a, b) = (&members[i], &members[j]);
            let v = match window.clip(a.a().max(b.a()), a.b().min(b.b())) {
                Some((lo, hi)) => rule.integrate(lo, hi, |t| a.eval(t) * b.eval(t)),
                None => 0.0,
            };
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    GramMatrix(g)
}

/// Result of the coefficient solve.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSolve {
    pub coefficients: DMatrix<f64>,
    pub rank: usize,
    pub rank_deficient: bool,
}

/// Minimum-norm least-squares solve of `G c_m = a_m` for every column.
pub fn solve_trial_coefficients(g: &GramMatrix, a: &DMatrix<f64>, rcond: f64) -> Result<TrialSolve> {
    if a.nrows() != g.dim() {
        return Err(Error::ShapeMismatch(format!(
            "Gram matrix is {0}x{0} but right-hand side has {1} rows",
            g.dim(),
            a.nrows()
        )));
    }
    let (coefficients, rank) = pinv_solve(g.matrix(), a, rcond);
    Ok(TrialSolve {
        coefficients,
        rank,
        rank_deficient: rank < g.dim(),
    })
}

/// Continuous, denoised representation `x(t) = Σ_j c_j ψ_j(t)` on a window.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialProjection {
    basis: BasisSet,
    coefficients: DMatrix<f64>,
    window: Window,
    residual_rms: Vec<f64>,
    gram: GramMatrix,
    rank: usize,
    rank_deficient: bool,
}

impl TrialProjection {
    /// Project `snapshots` onto `basis` over `window`.
    pub fn fit(snapshots: &SnapshotSet, basis: &BasisSet, window: Window, rcond: f64) -> Result<Self> {
        let a = data_inner_products(snapshots, basis, window)?;
        let gram = gram_matrix(basis, window);
        let solve = solve_trial_coefficients(&gram, &a, rcond)?;
        let mut proj = Self {
            basis: basis.clone(),
            coefficients: solve.coefficients,
            window,
            residual_rms: vec![0.0; snapshots.n_states()],
            gram,
            rank: solve.rank,
            rank_deficient: solve.rank_deficient,
        };
        proj.residual_rms = proj.residual_against(snapshots);
        Ok(proj)
    }

    /// Assemble from known coefficients (`J × M`).
    pub fn from_coefficients(basis: BasisSet, coefficients: DMatrix<f64>, window: Window) -> Result<Self> {
        if coefficients.nrows() != basis.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficient rows for {} basis members",
                coefficients.nrows(),
                basis.len()
            )));
        }
        let gram = gram_matrix(&basis, window);
        let j = basis.len();
        let m = coefficients.ncols();
        Ok(Self {
            basis,
            coefficients,
            window,
            residual_rms: vec![0.0; m],
            gram,
            rank: j,
            rank_deficient: false,
        })
    }

    pub fn basis(&self) -> &BasisSet {
        &self.basis
    }

    /// Expansion coefficients, `J × M`.
    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.coefficients
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn n_states(&self) -> usize {
        self.coefficients.ncols()
    }

    /// Per-state RMS of (reconstruction − data) at the samples inside the window.
    pub fn residual_rms(&self) -> &[f64] {
        &self.residual_rms
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rank_deficient(&self) -> bool {
        self.rank_deficient
    }

    /// Expansion evaluated at `t`, without the window check.
    pub(crate) fn eval_unchecked(&self, t: f64) -> DVector<f64> {
        let mut out = DVector::zeros(self.n_states());
        for (j, psi) in self.basis.members().iter().enumerate() {
            let v = psi.eval(t);
            if v != 0.0 {
                out += self.coefficients.row(j).transpose() * v;
            }
        }
        out
    }

    /// Expansion evaluated at `t ∈ [t1, t2]`.
    pub fn reconstruct(&self, t: f64) -> Result<DVector<f64>> {
        if !self.window.contains(t) {
            return Err(Error::OutOfWindow {
                t,
                t1: self.window.t1(),
                t2: self.window.t2(),
            });
        }
        Ok(self.eval_unchecked(t))
    }

    /// Reconstruction at several times, `M × len(times)`.
    pub fn reconstruct_many(&self, times: &[f64]) -> Result<DMatrix<f64>> {
        let cols = times
            .iter()
            .map(|&t| self.reconstruct(t))
            .collect::<Result<Vec<_>>>()?;
        if cols.is_empty() {
            return Ok(DMatrix::zeros(self.n_states(), 0));
        }
        Ok(DMatrix::from_columns(&cols))
    }

    /// Per-state RMS of (reconstruction − reference) at reference samples
    /// inside the window.
    pub fn residual_against(&self, reference: &SnapshotSet) -> Vec<f64> {
        let m = self.n_states();
        let mut sums = vec![0.0; m];
        let mut count = 0usize;
        for (n, &t) in reference.times().iter().enumerate() {
            if !self.window.contains(t) {
                continue;
            }
            let r = self.eval_unchecked(t) - reference.data().column(n);
            for (s, v) in sums.iter_mut().zip(r.iter()) {
                *s += v * v;
            }
            count += 1;
        }
        sums.into_iter()
            .map(|s| if count > 0 { (s / count as f64).sqrt() } else { 0.0 })
            .collect()
    }
}
