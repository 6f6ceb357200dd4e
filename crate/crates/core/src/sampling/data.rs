//! The measured near-field matrix and its noisy perturbation.

use alloc::string::String;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elastic::ElasticMedium;
use crate::geometry::MeasurementLine;
use crate::linalg::{spectral_norm, CMatrix};
use crate::solver::{near_field, BoundarySystem};
use crate::{Error, Result};

/// Which right-hand side the data matrix is meant to be paired with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplingMode {
    /// `r_z = Gamma(x_k, z) p`.
    IncidentOnly,
    /// `r_z = (G^sc(x_k, z, p; R) + Gamma(x_k, z)) p` for the fan of radius `R`.
    Modified { radius: f64 },
}

/// Where a matrix came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub surface: String,
    pub nodes_per_wavelength: f64,
    pub panel_order: usize,
    pub eta: f64,
    /// Seed of the last noise draw, if any.
    pub seed: Option<u64>,
    pub mode: SamplingMode,
}

/// `2N x 2N` scattered near field: block `(k, l)` column `j` is the field
/// at `x_k` from a source at `x_l` with polarisation `e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct NearFieldMatrix {
    entries: CMatrix,
    line: MeasurementLine,
    medium: ElasticMedium,
    noise_level: f64,
    provenance: Provenance,
}

impl NearFieldMatrix {
    pub fn new(
        entries: CMatrix,
        line: MeasurementLine,
        medium: ElasticMedium,
        noise_level: f64,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = 2 * line.len();
        if entries.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.nrows(),
            });
        }
        if entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.ncols(),
            });
        }
        if !(noise_level >= 0.0 && noise_level.is_finite()) {
            return Err(Error::InvalidParameter("noise level must be finite and nonnegative"));
        }
        Ok(Self {
            entries,
            line,
            medium,
            noise_level,
            provenance,
        })
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn line(&self) -> &MeasurementLine {
        &self.line
    }

    pub fn medium(&self) -> &ElasticMedium {
        &self.medium
    }

    pub fn noise_level(&self) -> f64 {
        self.noise_level
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn set_mode(&mut self, mode: SamplingMode) {
        self.provenance.mode = mode;
    }

    /// Number of measurement points `N`.
    pub fn points(&self) -> usize {
        self.line.len()
    }
}

/// Near-field matrix of the surface solved by `system`, sources and
/// receivers both on `line`. One factorisation, `2N` solves.
pub fn scattered_matrix(system: &BoundarySystem, line: &MeasurementLine) -> Result<NearFieldMatrix> {
    let entries = near_field(system, line.points(), line.points())?;
    let options = system.mesh().options();
    let provenance = Provenance {
        surface: system.tag().into(),
        nodes_per_wavelength: options.nodes_per_wavelength,
        panel_order: options.panel_order,
        eta: system.eta(),
        seed: None,
        mode: SamplingMode::IncidentOnly,
    };
    NearFieldMatrix::new(entries, line.clone(), *system.medium(), 0.0, provenance)
}

/// `N + delta ||N||_2 X / ||X||_2` with `X` uniform on the complex square
/// `[-1, 1] + i [-1, 1]`, drawn from a ChaCha8 stream seeded with `seed`.
pub fn add_noise(matrix: &NearFieldMatrix, delta: f64, seed: u64) -> Result<NearFieldMatrix> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter("noise level must be finite and nonnegative"));
    }
    let mut out = matrix.clone();
    out.provenance.seed = Some(seed);
    out.noise_level = delta;
    if delta == 0.0 {
        return Ok(out);
    }
    let (rows, cols) = matrix.entries.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Row-major draw order, independent of the matrix storage layout.
    let mut x = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            x[(i, j)] = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        }
    }
    let nx = spectral_norm(&x)?;
    let nn = spectral_norm(&matrix.entries)?;
    out.entries += x * Complex64::from(delta * nn / nx);
    Ok(out)
}
