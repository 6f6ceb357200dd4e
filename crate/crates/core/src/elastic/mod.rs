//! The time-harmonic 2D Navier operator `mu Lap u + (lambda + mu) grad div u + omega^2 u`.

mod angular;
mod kupradze;
mod medium;
mod point;
mod special;
mod symbols;

pub use angular::{angular_spectrum_propagate, AngularSpectrum, Propagated};
pub use kupradze::{
    double_layer_kernel, kupradze_tensor, point_source, traction, traction_kernel, ComplexPair, ComplexTensor2,
    KernelPair, KupradzeKernel,
};
pub use medium::{make_medium, ElasticMedium};
pub use point::{Direction2, Point2};
pub use special::{hankel1, hankel1_pair};
pub use symbols::{dtn_symbol, gamma, projection_matrices, RESONANCE_GUARD};
