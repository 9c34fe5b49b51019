//! Domain types shared across the pipeline.
//!
//! Everything here is validated at construction and immutable afterwards.
//! No type assumes equispaced sampling.

use std::cmp::Ordering;

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Strictly increasing sample times, possibly nonuniform.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    t: Vec<f64>,
}

impl TimeGrid {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.len() < 2 {
            return Err(Error::GridTooShort { len: t.len() });
        }
        for (n, &v) in t.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteData { row: 0, col: n });
            }
        }
        if let Some(index) = t.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NonMonotoneTime { index: index + 1 });
        }
        Ok(Self { t })
    }

    /// `n` equispaced samples covering `[start, end]`.
    pub fn uniform(start: f64, end: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridTooShort { len: n });
        }
        let h = (end - start) / (n - 1) as f64;
        let mut t: Vec<f64> = (0..n).map(|k| start + h * k as f64).collect();
        t[n - 1] = end;
        Self::new(t)
    }

    /// Geometrically graded samples on `[start, end]` whose last spacing is
    /// `ratio` times the first.
    pub fn graded(start: f64, end: f64, n: usize, ratio: f64) -> Result<Self> {
        if n < 3 || !(ratio > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "graded grid needs n >= 3 and ratio > 0 (n = {n}, ratio = {ratio})"
            )));
        }
        let intervals = n - 1;
        let q = ratio.powf(1.0 / (intervals - 1) as f64);
        let widths: Vec<f64> = (0..intervals).map(|k| q.powi(k as i32)).collect();
        let total: f64 = widths.iter().sum();
        let scale = (end - start) / total;
        let mut t = Vec::with_capacity(n);
        let mut acc = start;
        t.push(acc);
        for w in &widths {
            acc += w * scale;
            t.push(acc);
        }
        t[n - 1] = end;
        Self::new(t)
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.t[0]
    }

    pub fn end(&self) -> f64 {
        self.t[self.t.len() - 1]
    }

    /// Ratio of the largest to the smallest sample spacing.
    pub fn spacing_ratio(&self) -> f64 {
        let (lo, hi) = self
            .t
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), h| (lo.min(h), hi.max(h)));
        hi / lo
    }
}

/// `M` state variables observed at the `N` times of a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSet {
    grid: TimeGrid,
    x: DMatrix<f64>,
}

impl SnapshotSet {
    pub fn new(grid: TimeGrid, x: DMatrix<f64>) -> Result<Self> {
        if x.ncols() != grid.len() {
            return Err(Error::ShapeMismatch(format!(
                "snapshot matrix has {} columns but the time grid has {} samples",
                x.ncols(),
                grid.len()
            )));
        }
        if x.nrows() == 0 {
            return Err(Error::ShapeMismatch("snapshot matrix has no state rows".into()));
        }
        for col in 0..x.ncols() {
            for row in 0..x.nrows() {
                if !x[(row, col)].is_finite() {
                    return Err(Error::NonFiniteData { row, col });
                }
            }
        }
        Ok(Self { grid, x })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn times(&self) -> &[f64] {
        self.grid.times()
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn n_states(&self) -> usize {
        self.x.nrows()
    }

    pub fn n_samples(&self) -> usize {
        self.x.ncols()
    }

    pub fn into_parts(self) -> (TimeGrid, DMatrix<f64>) {
        (self.grid, self.x)
    }
}

/// Validate raw data (`M × N`) and times (length `N`) into a [`SnapshotSet`].
pub fn validate_snapshots(x: DMatrix<f64>, t: Vec<f64>) -> Result<SnapshotSet> {
    let grid = TimeGrid::new(t)?;
    SnapshotSet::new(grid, x)
}

/// Closed integration window `[t1, t2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    t1: f64,
    t2: f64,
}

impl Window {
    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        if !(t1.is_finite() && t2.is_finite()) || t1 >= t2 {
            return Err(Error::InvalidWindow {
                t1,
                t2,
                reason: "need finite t1 < t2".into(),
            });
        }
        Ok(Self { t1, t2 })
    }

    /// The full sample range of a grid.
    pub fn covering(grid: &TimeGrid) -> Self {
        Self {
            t1: grid.start(),
            t2: grid.end(),
        }
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn length(&self) -> f64 {
        self.t2 - self.t1
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.t1 && t <= self.t2
    }

    /// Intersection with `[a, b]`, if it has positive length.
    pub fn clip(&self, a: f64, b: f64) -> Option<(f64, f64)> {
        let lo = a.max(self.t1);
        let hi = b.min(self.t2);
        (hi > lo).then_some((lo, hi))
    }

    /// Ensure the window lies inside the sample range of `grid`.
    pub fn check_within(&self, grid: &TimeGrid) -> Result<()> {
        if self.t1 < grid.start() || self.t2 > grid.end() {
            return Err(Error::InvalidWindow {
                t1: self.t1,
                t2: self.t2,
                reason: format!(
                    "outside the sample range [{}, {}]",
                    grid.start(),
                    grid.end()
                ),
            });
        }
        Ok(())
    }
}

/// Eigenvalue ordering: descending real part, ties by descending imaginary part.
pub fn spectrum_order(a: &Complex64, b: &Complex64) -> Ordering {
    b.re.total_cmp(&a.re).then_with(|| b.im.total_cmp(&a.im))
}

/// Continuous-time eigenvalues in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    eigenvalues: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn from_unsorted(mut eigenvalues: Vec<Complex64>) -> Self {
        eigenvalues.sort_by(spectrum_order);
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// First eigenvalue in canonical order (largest real part).
    pub fn dominant(&self) -> Option<Complex64> {
        self.eigenvalues.first().copied()
    }

    pub fn is_sorted(&self) -> bool {
        self.eigenvalues
            .windows(2)
            .all(|w| spectrum_order(&w[0], &w[1]) != Ordering::Greater)
    }

    /// Every non-real eigenvalue has a conjugate mate within `rel_tol` (relative).
    pub fn is_conjugate_closed(&self, rel_tol: f64) -> bool {
        let scale = self
            .eigenvalues
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let tol = rel_tol * scale;
        let mut used = vec![false; self.eigenvalues.len()];
        for (k, z) in self.eigenvalues.iter().enumerate() {
            if z.im.abs() <= tol || used[k] {
                continue;
            }
            let mate = self.eigenvalues.iter().enumerate().position(|(j, w)| {
                j != k && !used[j] && (w - z.conj()).norm() <= tol
            });
            match mate {
                Some(j) => {
                    used[j] = true;
                    used[k] = true;
                }
                None => return false,
            }
        }
        true
    }
}
