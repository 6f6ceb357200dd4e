//! Elastic-wave scattering by unbounded rough surfaces and their
//! reconstruction from near-field data by a linear sampling method.
//!
//! The crate is organised bottom-up:
//!
//! * [`elastic`]: the 2D Navier operator. Medium parameters, Hankel
//!   functions, the Kupradze fundamental tensor, traction kernels and the
//!   Fourier symbols used by the upward propagating radiation condition.
//! * [`geometry`]: surface profiles, the fan-shaped auxiliary surface,
//!   measurement lines, sampling grids and panel meshes.
//! * [`solver`]: a panel Nyström solver for the rigid (Dirichlet) scattering
//!   problem, near-field matrices and reciprocity checks.
//! * [`sampling`]: noise model, Tikhonov filter, indicator functions and the
//!   imaging drivers.
//!
//! The crate is `no_std` (with `alloc`) when built without the default
//! `std` feature. With `std`, assembly and grid sweeps run on rayon.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod elastic;
pub mod error;
pub mod geometry;
pub mod linalg;
mod par;
pub mod quadrature;
pub mod sampling;
pub mod solver;

pub use error::{Error, Result};

pub use num_complex::Complex64;
