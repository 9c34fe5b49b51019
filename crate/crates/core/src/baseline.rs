//! Standard exact DMD on equispaced snapshots.
//!
//! Used as the comparison baseline. Unlike the weak formulation it requires
//! a uniform time step and refuses anything else.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{real_eigenpairs, sorted_svd};
use crate::types::{spectrum_order, Complex64, SnapshotSet};

/// Relative tolerance on the deviation of each step from the mean step.
pub const UNIFORM_GRID_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactDmdModel {
    /// Eigenvalues `μ` of the one-step map.
    pub spectrum_discrete: Vec<Complex64>,
    /// `ln(μ) / dt`, principal branch, in spectrum order.
    pub spectrum_continuous: Vec<Complex64>,
    /// Exact DMD modes `X₂ V S⁻¹ W`, `M × rank`.
    pub modes: DMatrix<Complex64>,
    pub dt: f64,
    pub rank: usize,
}

impl ExactDmdModel {
    pub fn dominant(&self) -> Complex64 {
        self.spectrum_continuous[0]
    }
}

/// Uniform step of `times`, or `NonUniformGrid`.
pub fn uniform_step(times: &[f64]) -> Result<f64> {
    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    let deviation = times
        .windows(2)
        .map(|w| ((w[1] - w[0]) - dt).abs() / dt)
        .fold(0.0, f64::max);
    if deviation > UNIFORM_GRID_TOL {
        return Err(Error::NonUniformGrid { deviation });
    }
    Ok(dt)
}

pub fn fit_exact_dmd(snapshots: &SnapshotSet, rank: usize) -> Result<ExactDmdModel> {
    let dt = uniform_step(snapshots.times())?;
    let x = snapshots.data();
    let (m, n) = (x.nrows(), x.ncols());
    let max = m.min(n - 1);
    if rank == 0 || rank > max {
        return Err(Error::RankTooLarge { rank, max });
    }
    let x1 = x.columns(0, n - 1).into_owned();
    let x2 = x.columns(1, n - 1).into_owned();
    let svd = sorted_svd(&x1);
    if !(svd.s[rank - 1] > 0.0) {
        return Err(Error::ZeroMatrix);
    }
    let u = svd.u.columns(0, rank);
    let mut v_sinv = svd.v.columns(0, rank).into_owned();
    for k in 0..rank {
        v_sinv.column_mut(k).unscale_mut(svd.s[k]);
    }
    let a_tilde = u.transpose() * &x2 * &v_sinv;
    let (mu, w) = real_eigenpairs(&a_tilde)?;

    let lambda: Vec<Complex64> = mu.iter().map(|z| z.ln() / dt).collect();
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_by(|&a, &b| spectrum_order(&lambda[a], &lambda[b]));

    let base = (&x2 * &v_sinv).map(|v| Complex64::new(v, 0.0));
    let raw_modes = base * w;
    let mut modes = DMatrix::zeros(m, rank);
    for (dst, &src) in order.iter().enumerate() {
        let col: DVector<Complex64> = raw_modes.column(src).into_owned();
        let norm = col.norm();
        let col = if norm > 0.0 { col / Complex64::new(norm, 0.0) } else { col };
        modes.set_column(dst, &col);
    }
    Ok(ExactDmdModel {
        spectrum_discrete: order.iter().map(|&k| mu[k]).collect(),
        spectrum_continuous: order.iter().map(|&k| lambda[k]).collect(),
        modes,
        dt,
        rank,
    })
}
