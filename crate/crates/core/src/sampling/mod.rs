//! Sampling-method reconstruction from near-field data on a measurement line.
//!
//! For each sampling point `z` the regularised near-field equation
//! `(alpha + N* N) g = N* r_z` is solved through one cached SVD of the data
//! matrix; `1 / ||g||` is large below the surface and small above it.

mod data;
mod indicator;
mod rhs;
mod tikhonov;

pub use data::{add_noise, scattered_matrix, NearFieldMatrix, Provenance, SamplingMode};
pub use indicator::{extract_surface, indicator, run_sampling, run_sampling_polarizations, IndicatorField};
pub use rhs::{assemble_rhs, AuxiliaryField, RhsVector};
pub use tikhonov::{tikhonov_solve, TikhonovSolver};

/// Regularisation parameter used when none is given.
pub const DEFAULT_ALPHA: f64 = 1e-3;
