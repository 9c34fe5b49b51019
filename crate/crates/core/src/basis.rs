//! Compactly supported polynomial bump functions.
//!
//! A bump on `(a, b)` with exponent `p` is `C (t - a)^p (b - t)^p` with
//! `C = (2 / (b - a))^(2p)`, so its peak value at the midpoint is exactly 1.
//! The same family serves as trial basis (data projection) and test basis
//! (weak form).

use crate::error::{Error, Result};
use crate::types::Window;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpBasis {
    a: f64,
    b: f64,
    p: u32,
    c: f64,
}

impl BumpBasis {
    pub fn new(a: f64, b: f64, p: u32) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::InvalidBasis(format!("support [{a}, {b}] is empty")));
        }
        if p < 1 {
            return Err(Error::InvalidBasis("exponent p must be >= 1".into()));
        }
        let c = (2.0 / (b - a)).powi(2 * p as i32);
        Ok(Self { a, b, p, c })
    }

    /// Bump centered at `center` with the given half-width.
    pub fn centered(center: f64, half_width: f64, p: u32) -> Result<Self> {
        Self::new(center - half_width, center + half_width, p)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Normalization constant `C`.
    pub fn scale(&self) -> f64 {
        self.c
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Value at `t`; exactly zero outside the open support.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= self.a || t >= self.b {
            return 0.0;
        }
        let p = self.p as i32;
        self.c * ((t - self.a) * (self.b - t)).powi(p)
    }

    /// Time derivative at `t`; zero outside the open support.
    pub fn deriv(&self, t: f64) -> f64 {
        if t <= self.a || t >= self.b {
            return 0.0;
        }
        let left = t - self.a;
        let right = self.b - t;
        let pm1 = self.p as i32 - 1;
        self.c * self.p as f64 * (left * right).powi(pm1) * (right - left)
    }
}

/// How a tier's overlap fraction translates into member half-widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OverlapMode {
    /// Adjacent supports overlap by `v` times the center spacing:
    /// half-width `d/2 (1 + v)`.
    #[default]
    Spacing,
    /// Adjacent supports overlap by `v` times the support width:
    /// half-width `d / (2 (1 - v))`, requires `v < 1`.
    Support,
}

/// User-facing description of a basis set: one tier per `(count, overlap)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisLayout {
    pub counts: Vec<usize>,
    pub overlaps: Vec<f64>,
    pub p: u32,
    pub window: Window,
    pub overlap_mode: OverlapMode,
}

impl BasisLayout {
    pub fn new(counts: Vec<usize>, overlaps: Vec<f64>, p: u32, window: Window) -> Result<Self> {
        let layout = Self {
            counts,
            overlaps,
            p,
            window,
            overlap_mode: OverlapMode::Spacing,
        };
        layout.validate()?;
        Ok(layout)
    }

    /// Single tier of `count` members.
    pub fn single(count: usize, overlap: f64, p: u32, window: Window) -> Result<Self> {
        Self::new(vec![count], vec![overlap], p, window)
    }

    pub fn with_overlap_mode(mut self, mode: OverlapMode) -> Result<Self> {
        self.overlap_mode = mode;
        self.validate()?;
        Ok(self)
    }

    pub fn total_count(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.counts.len() != self.overlaps.len() {
            return Err(Error::InvalidBasis(format!(
                "{} counts but {} overlaps",
                self.counts.len(),
                self.overlaps.len()
            )));
        }
        if self.p < 1 {
            return Err(Error::InvalidBasis("exponent p must be >= 1".into()));
        }
        if self.counts.contains(&0) {
            return Err(Error::InvalidBasis("tier counts must be positive".into()));
        }
        let upper = match self.overlap_mode {
            OverlapMode::Spacing => 2.0,
            OverlapMode::Support => 1.0,
        };
        if let Some(v) = self.overlaps.iter().find(|v| !(**v >= 0.0 && **v < upper)) {
            return Err(Error::InvalidBasis(format!(
                "overlap fraction {v} outside [0, {upper})"
            )));
        }
        Ok(())
    }
}

/// An ordered collection of bumps sharing one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    members: Vec<BumpBasis>,
    window: Option<Window>,
}

impl BasisSet {
    pub fn new(members: Vec<BumpBasis>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::EmptyLayout);
        };
        if members.iter().any(|m| m.p() != first.p()) {
            return Err(Error::InvalidBasis("all members of a set must share p".into()));
        }
        Ok(Self {
            members,
            window: None,
        })
    }

    /// Tag the set with the window it was laid out on.
    pub fn on_window(mut self, window: Window) -> Self {
        self.window = Some(window);
        self
    }

    pub fn members(&self) -> &[BumpBasis] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn p(&self) -> u32 {
        self.members[0].p()
    }

    pub fn window(&self) -> Option<Window> {
        self.window
    }

    /// Values of every member at `t`.
    pub fn eval_all(&self, t: f64) -> Vec<f64> {
        self.members.iter().map(|m| m.eval(t)).collect()
    }
}

/// Lay out the bumps described by `layout`, tier-major and left to right.
pub fn build_basis_set(layout: &BasisLayout) -> Result<BasisSet> {
    if layout.counts.is_empty() {
        return Err(Error::EmptyLayout);
    }
    layout.validate()?;
    let (t1, t2) = (layout.window.t1(), layout.window.t2());
    let mut members = Vec::with_capacity(layout.total_count());
    for (&k, &v) in layout.counts.iter().zip(&layout.overlaps) {
        let spacing = if k == 1 {
            t2 - t1
        } else {
            (t2 - t1) / (k - 1) as f64
        };
        let half_width = match layout.overlap_mode {
            OverlapMode::Spacing => 0.5 * spacing * (1.0 + v),
            OverlapMode::Support => 0.5 * spacing / (1.0 - v),
        };
        for i in 0..k {
            let center = if k == 1 {
                0.5 * (t1 + t2)
            } else if i + 1 == k {
                t2
            } else {
                t1 + spacing * i as f64
            };
            members.push(BumpBasis::centered(center, half_width, layout.p)?);
        }
    }
    Ok(BasisSet::new(members)?.on_window(layout.window))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(p: u32) -> BumpBasis {
        BumpBasis::new(0.0, 1.0, p).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(unit(1).eval(0.5), 1.0);
        assert_eq!(unit(2).eval(0.0), 0.0);
        // 4 * 0.25 * 0.75
        assert!((unit(1).eval(0.25) - 0.75).abs() < 1e-15);
        assert_eq!(unit(1).eval(1.0), 0.0);
        assert_eq!(unit(1).eval(-3.0), 0.0);
    }

    #[test]
    fn deriv_examples() {
        assert_eq!(unit(2).deriv(0.5), 0.0);
        // 4 * (1 - 2t) at t = 0.25
        assert!((unit(1).deriv(0.25) - 2.0).abs() < 1e-15);
        assert_eq!(unit(1).deriv(2.0), 0.0);
    }

    #[test]
    fn normalization_constant() {
        let b = BumpBasis::new(-1.0, 3.0, 3).unwrap();
        assert_eq!(b.scale(), (2.0f64 / 4.0).powi(6));
        assert!((b.eval(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_bumps() {
        assert!(BumpBasis::new(1.0, 1.0, 1).is_err());
        assert!(BumpBasis::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn two_member_tier_layout() {
        let w = Window::new(0.0, 1.0).unwrap();
        let set = build_basis_set(&BasisLayout::single(2, 0.0, 1, w).unwrap()).unwrap();
        let supports: Vec<_> = set.members().iter().map(|m| m.support()).collect();
        assert_eq!(supports, vec![(-0.5, 0.5), (0.5, 1.5)]);
    }

    #[test]
    fn singleton_tier_spans_window() {
        let w = Window::new(0.0, 1.0).unwrap();
        let set = build_basis_set(&BasisLayout::single(1, 0.0, 2, w).unwrap()).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.members()[0].support(), (0.0, 1.0));
        assert_eq!(set.p(), 2);
    }

    #[test]
    fn tiers_concatenate() {
        let w = Window::new(0.0, 1.0).unwrap();
        let layout = BasisLayout::new(vec![3, 2], vec![0.5, 0.5], 2, w).unwrap();
        let set = build_basis_set(&layout).unwrap();
        assert_eq!(set.len(), 5);
        let centers: Vec<_> = set.members().iter().map(|m| m.center()).collect();
        assert_eq!(centers, vec![0.0, 0.5, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn half_spacing_overlap() {
        // v = 0.5: adjacent supports overlap by half the center distance
        let w = Window::new(0.0, 4.0).unwrap();
        let set = build_basis_set(&BasisLayout::single(3, 0.5, 2, w).unwrap()).unwrap();
        let m = set.members();
        let overlap = m[0].b() - m[1].a();
        assert!((overlap - 1.0).abs() < 1e-14);
    }

    #[test]
    fn support_overlap_mode() {
        let w = Window::new(0.0, 4.0).unwrap();
        let layout = BasisLayout::single(3, 0.5, 2, w)
            .unwrap()
            .with_overlap_mode(OverlapMode::Support)
            .unwrap();
        let set = build_basis_set(&layout).unwrap();
        let m = set.members();
        let width = m[0].b() - m[0].a();
        assert!(((m[0].b() - m[1].a()) / width - 0.5).abs() < 1e-14);
    }

    #[test]
    fn layout_errors() {
        let w = Window::new(0.0, 1.0).unwrap();
        assert_eq!(
            build_basis_set(&BasisLayout {
                counts: vec![],
                overlaps: vec![],
                p: 1,
                window: w,
                overlap_mode: OverlapMode::Spacing
            }),
            Err(Error::EmptyLayout)
        );
        assert!(BasisLayout::new(vec![2], vec![0.5, 0.5], 1, w).is_err());
        assert!(BasisLayout::new(vec![2], vec![2.5], 1, w).is_err());
        assert!(BasisLayout::new(vec![0], vec![0.5], 1, w).is_err());
    }

    #[test]
    fn mixed_exponents_rejected() {
        let err = BasisSet::new(vec![unit(1), unit(2)]).unwrap_err();
        assert!(matches!(err, Error::InvalidBasis(_)));
    }
}
