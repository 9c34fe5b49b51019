//! Dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::types::{spectrum_order, Complex64};

/// Thin SVD `m = U diag(s) Vᵀ` with singular values in descending order.
pub(crate) struct SortedSvd {
    pub u: DMatrix<f64>,
    pub s: Vec<f64>,
    pub v: DMatrix<f64>,
}

pub(crate) fn sorted_svd(m: &DMatrix<f64>) -> SortedSvd {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let s_raw = svd.singular_values;
    let mut order: Vec<usize> = (0..s_raw.len()).collect();
    order.sort_by(|&a, &b| s_raw[b].total_cmp(&s_raw[a]));
    let k = order.len();
    let mut u_sorted = DMatrix::zeros(m.nrows(), k);
    let mut v_sorted = DMatrix::zeros(m.ncols(), k);
    let mut s = Vec::with_capacity(k);
    for (dst, &src) in order.iter().enumerate() {
        u_sorted.set_column(dst, &u.column(src));
        v_sorted.set_column(dst, &v_t.row(src).transpose());
        s.push(s_raw[src]);
    }
    SortedSvd {
        u: u_sorted,
        s,
        v: v_sorted,
    }
}

/// Minimum-norm least-squares solution of `g x = rhs` (column by column)
/// through the SVD pseudo-inverse. Singular values below `rcond * s_max`
/// are discarded. Returns the solution and the effective rank.
pub(crate) fn pinv_solve(g: &DMatrix<f64>, rhs: &DMatrix<f64>, rcond: f64) -> (DMatrix<f64>, usize) {
    let svd = sorted_svd(g);
    let s_max = svd.s.first().copied().unwrap_or(0.0);
    let cutoff = rcond * s_max;
    let rank = svd.s.iter().take_while(|&&s| s > cutoff && s > 0.0).count();
    let mut x = DMatrix::zeros(g.ncols(), rhs.ncols());
    for k in 0..rank {
        let uk = svd.u.column(k);
        let vk = svd.v.column(k);
        // coefficient row: (u_kᵀ rhs) / s_k
        let coef = uk.transpose() * rhs / svd.s[k];
        x += vk * coef;
    }
    (x, rank)
}

/// Reciprocal condition number in the 1-norm, computed from the explicit
/// inverse. Returns 0 for singular matrices.
pub(crate) fn rcond_1norm(m: &DMatrix<f64>) -> f64 {
    let norm1 = |a: &DMatrix<f64>| {
        (0..a.ncols())
            .map(|j| a.column(j).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    match m.clone().lu().try_inverse() {
        Some(inv) => {
            let r = 1.0 / (norm1(m) * norm1(&inv));
            if r.is_finite() {
                r
            } else {
                0.0
            }
        }
        None => 0.0,
    }
}

/// Complex eigenpairs of a real square matrix, in spectrum order, with unit
/// eigenvectors. Conjugate eigenvalues receive conjugate eigenvectors.
pub(crate) fn real_eigenpairs(a: &DMatrix<f64>) -> Result<(Vec<Complex64>, DMatrix<Complex64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::ShapeMismatch("eigendecomposition needs a square matrix".into()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigFailure);
    }
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let schur = nalgebra::linalg::Schur::try_new(a.clone(), f64::EPSILON, 10_000)
        .ok_or(Error::EigFailure)?;
    let mut vals: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    vals.sort_by(spectrum_order);

    let scale = a.norm().max(f64::MIN_POSITIVE);
    let cluster_tol = 1e-8 * scale;
    let ac = a.map(|v| Complex64::new(v, 0.0));
    let mut vecs: Vec<Option<DVector<Complex64>>> = vec![None; n];
    let mut mated = vec![false; n];

    for k in 0..n {
        if vecs[k].is_some() {
            continue;
        }
        let lam = vals[k];
        if lam.im < -cluster_tol {
            let mate = (0..k).find(|&j| {
                !mated[j] && vals[j].im > cluster_tol && (vals[j] - lam.conj()).norm() <= cluster_tol
            });
            if let Some(j) = mate {
                mated[j] = true;
                vecs[k] = vecs[j].as_ref().map(|v| v.map(|z| z.conj()));
                continue;
            }
        }
        let members: Vec<usize> = (k..n)
            .filter(|&j| vecs[j].is_none() && (vals[j] - lam).norm() <= cluster_tol)
            .collect();
        let shifted = &ac - DMatrix::<Complex64>::identity(n, n) * lam;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or(Error::EigFailure)?;
        let s = svd.singular_values;
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.sort_by(|&x, &y| s[x].total_cmp(&s[y]));
        // a defective cluster has fewer null vectors than members; reuse the
        // best one so the eigenvector matrix comes out singular
        let null_tol = 1e-8 * scale;
        for (slot, &j) in members.iter().enumerate() {
            let candidate = order[slot.min(order.len() - 1)];
            let row = if s[candidate] <= null_tol { candidate } else { order[0] };
            let v: DVector<Complex64> = v_t.row(row).adjoint();
            let norm = v.norm();
            vecs[j] = Some(v / Complex64::new(norm, 0.0));
        }
    }

    let mut w = DMatrix::zeros(n, n);
    for (k, v) in vecs.into_iter().enumerate() {
        w.set_column(k, &v.ok_or(Error::EigFailure)?);
    }
    Ok((vals, w))
}
