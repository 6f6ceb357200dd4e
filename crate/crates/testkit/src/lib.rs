//! Reference computations for tests, deliberately independent of the
//! production code paths: arbitrary-precision Bessel series, finite
//! differences, plain Gaussian elimination and adaptive quadrature.

pub mod bessel;
pub mod dense;
pub mod diff;
pub mod quad;
