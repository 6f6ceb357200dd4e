use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Isotropic homogeneous medium at a fixed angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticMedium {
    pub lambda: f64,
    pub mu: f64,
    pub omega: f64,
    /// Shear wavenumber `omega / sqrt(mu)`.
    pub k_s: f64,
    /// Compressional wavenumber `omega / sqrt(2 mu + lambda)`.
    pub k_p: f64,
}

impl ElasticMedium {
    pub fn new(lambda: f64, mu: f64, omega: f64) -> Result<Self> {
        if !lambda.is_finite() || !mu.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidParameter("Lamé constants and frequency must be finite"));
        }
        if mu <= 0.0 {
            return Err(Error::InvalidParameter("mu > 0 violated"));
        }
        if lambda + mu <= 0.0 {
            return Err(Error::InvalidParameter("lambda + mu > 0 violated"));
        }
        if omega <= 0.0 {
            return Err(Error::InvalidParameter("omega > 0 violated"));
        }
        Ok(Self {
            lambda,
            mu,
            omega,
            k_s: omega / mu.sqrt(),
            k_p: omega / (2.0 * mu + lambda).sqrt(),
        })
    }

    pub fn shear_wavelength(&self) -> f64 {
        2.0 * PI / self.k_s
    }

    pub fn compressional_wavelength(&self) -> f64 {
        2.0 * PI / self.k_p
    }
}

/// Same as [`ElasticMedium::new`].
pub fn make_medium(lambda: f64, mu: f64, omega: f64) -> Result<ElasticMedium> {
    ElasticMedium::new(lambda, mu, omega)
}
