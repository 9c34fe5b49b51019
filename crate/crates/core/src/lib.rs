//! Weak-form dynamic mode decomposition.
//!
//! Estimates continuous-time eigenvalues, spatial modes, denoised
//! reconstructions and forecasts of a linear system from noisy snapshots
//! taken at arbitrary (nonuniform) times. The data are first projected onto
//! a basis of compactly supported polynomial bumps; the governing ODE is then
//! tested against a second bump family and integrated by parts, which yields
//! a pair of weak snapshot matrices `Y+ = A Y−` that a standard DMD
//! reduction turns into a spectrum.
//!
//! | module | contents |
//! |---|---|
//! | [`types`] | time grids, snapshot sets, windows, spectra |
//! | [`basis`] | bump functions and basis layouts |
//! | [`projection`] | Gram matrix, data projection, reconstruction |
//! | [`wdmd`] | weak pair assembly, SVD reduction, eigenpairs, forecast |
//! | [`baseline`] | exact DMD on equispaced data |
//! | [`bench`] | synthetic systems, noise, error metrics, oracles |
//! | [`cli`] | command-line front end and CSV/config I/O |

pub mod baseline;
pub mod basis;
pub mod bench;
pub mod cli;
pub mod error;
mod linalg;
pub mod projection;
pub mod quadrature;
pub mod types;
pub mod wdmd;

pub use basis::{build_basis_set, BasisLayout, BasisSet, BumpBasis, OverlapMode};
pub use error::{Error, Result};
pub use projection::{GramMatrix, TrialProjection};
pub use types::{validate_snapshots, Complex64, ComplexSpectrum, SnapshotSet, TimeGrid, Window};
pub use wdmd::{fit, fit_with_options, EnergyCriterion, FitOptions, ForecastSpace, WdmdModel};
