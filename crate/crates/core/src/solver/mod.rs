//! Panel Nystrom solver for rigid (Dirichlet) scattering of point sources.
//!
//! The scattered field is sought as `u^sc = (D - i eta S) phi` on a closed
//! boundary made of the surface graph over a finite window plus a closure
//! below it. `S` is the single layer with the Kupradze tensor and `D` the
//! double layer built from its traction.

mod integrate;
mod system;

pub use system::{
    assemble, auxiliary_scattered, boundary_residual, evaluate_scattered, near_field, reciprocity_check,
    solve_dirichlet, solve_point_source, BoundarySystem, ScatterSolution, SolverSettings,
};
