//! Indicator functions over a sampling grid and surface extraction.

use alloc::vec::Vec;

use super::data::NearFieldMatrix;
use super::rhs::{assemble_rhs, AuxiliaryField};
use super::tikhonov::TikhonovSolver;
use crate::elastic::ComplexPair;
use crate::geometry::SamplingGrid;
use crate::linalg::CVector;
use crate::par::map_indexed;
use crate::{Error, Result};

/// `1 / ||g||_2`.
pub fn indicator(g: &CVector) -> Result<f64> {
    let norm = g.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(1.0 / norm)
}

/// Raw and max-normalised indicator values in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorField {
    pub grid: SamplingGrid,
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
    pub alpha: f64,
    pub noise_level: f64,
}

impl IndicatorField {
    /// Normalises `raw` by its maximum.
    pub fn from_raw(grid: SamplingGrid, raw: Vec<f64>, alpha: f64, noise_level: f64) -> Result<Self> {
        if raw.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: raw.len(),
            });
        }
        let max = raw.iter().copied().fold(0.0, f64::max);
        if !(max > 0.0 && max.is_finite()) {
            return Err(Error::InvalidParameter("indicator values must be positive and finite"));
        }
        let normalized = raw.iter().map(|&v| v / max).collect();
        Ok(Self {
            grid,
            raw,
            normalized,
            alpha,
            noise_level,
        })
    }

    /// Normalised value at `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.normalized[self.grid.index(row, col)]
    }
}

/// Solves the regularised near-field equation at every grid point with one
/// SVD of the data and returns `1 / ||g_z||`, normalised by its maximum.
/// With `auxiliary` the right-hand side includes the fan's scattered field.
pub fn run_sampling(
    matrix: &NearFieldMatrix,
    grid: &SamplingGrid,
    p: ComplexPair,
    alpha: f64,
    auxiliary: Option<&AuxiliaryField>,
) -> Result<IndicatorField> {
    let solver = TikhonovSolver::new(matrix.entries())?;
    let raw = raw_indicator(matrix, &solver, grid, p, alpha, auxiliary)?;
    IndicatorField::from_raw(grid.clone(), raw, alpha, matrix.noise_level())
}

/// Pointwise maximum of the normalised fields for several polarisations.
/// `raw` holds the maximum of the per-polarisation raw values.
pub fn run_sampling_polarizations(
    matrix: &NearFieldMatrix,
    grid: &SamplingGrid,
    polarizations: &[ComplexPair],
    alpha: f64,
    auxiliary: Option<&AuxiliaryField>,
) -> Result<IndicatorField> {
    if polarizations.is_empty() {
        return Err(Error::InvalidCount("at least one polarisation"));
    }
    let solver = TikhonovSolver::new(matrix.entries())?;
    let mut combined: Option<IndicatorField> = None;
    for &p in polarizations {
        let raw = raw_indicator(matrix, &solver, grid, p, alpha, auxiliary)?;
        let field = IndicatorField::from_raw(grid.clone(), raw, alpha, matrix.noise_level())?;
        combined = Some(match combined {
            None => field,
            Some(mut acc) => {
                for (a, b) in acc.normalized.iter_mut().zip(&field.normalized) {
                    *a = a.max(*b);
                }
                for (a, b) in acc.raw.iter_mut().zip(&field.raw) {
                    *a = a.max(*b);
                }
                acc
            }
        });
    }
    Ok(combined.expect("nonempty polarisations"))
}

fn raw_indicator(
    matrix: &NearFieldMatrix,
    solver: &TikhonovSolver,
    grid: &SamplingGrid,
    p: ComplexPair,
    alpha: f64,
    auxiliary: Option<&AuxiliaryField>,
) -> Result<Vec<f64>> {
    map_indexed(grid.len(), |i| {
        let rhs = assemble_rhs(grid.points()[i], p, matrix.line(), matrix.medium(), auxiliary)?;
        indicator(&solver.solve(&rhs.entries, alpha)?)
    })
    .into_iter()
    .collect()
}

/// For each grid column, the largest `x2` where the normalised indicator
/// rises through `cutoff` going down, linearly interpolated between rows.
/// Columns without such a crossing are omitted.
pub fn extract_surface(field: &IndicatorField, cutoff: f64) -> Result<Vec<(f64, f64)>> {
    if !(cutoff > 0.0 && cutoff < 1.0) {
        return Err(Error::InvalidParameter("cutoff must lie in (0, 1)"));
    }
    let grid = &field.grid;
    let mut out = Vec::new();
    for col in 0..grid.columns() {
        for row in (1..grid.rows()).rev() {
            let (upper, lower) = (field.at(row, col), field.at(row - 1, col));
            if upper < cutoff && lower >= cutoff {
                let x_up = grid.points()[grid.index(row, col)];
                let x_lo = grid.points()[grid.index(row - 1, col)];
                let t = (cutoff - lower) / (upper - lower);
                out.push((x_up.x1, x_lo.x2 + t * (x_up.x2 - x_lo.x2)));
                break;
            }
        }
    }
    Ok(out)
}
