//! Right-hand sides of the near-field equation.

use alloc::sync::Arc;

use super::data::SamplingMode;
use crate::elastic::{ComplexPair, ElasticMedium, KupradzeKernel, Point2};
use crate::geometry::{AuxiliarySurface, MeasurementLine, Surface};
use crate::linalg::{CMatrix, CVector};
use crate::solver::{BoundarySystem, SolverSettings};
use crate::{Error, Result};

/// Stacked values at the measurement points, entry `2k + i` for component
/// `i` at `x_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsVector {
    pub entries: CVector,
    pub sample_point: Point2,
    pub polarization: ComplexPair,
    pub mode: SamplingMode,
}

/// Fan-surface solver with the evaluation operator onto a measurement line
/// precomputed, so each sampling point costs one triangular solve pair.
#[derive(Debug, Clone)]
pub struct AuxiliaryField {
    fan: AuxiliarySurface,
    system: BoundarySystem,
    line: MeasurementLine,
    evaluation: CMatrix,
}

impl AuxiliaryField {
    pub fn new(
        fan: AuxiliarySurface,
        medium: ElasticMedium,
        settings: &SolverSettings,
        line: &MeasurementLine,
    ) -> Result<Self> {
        let surface: Arc<dyn Surface> = Arc::new(fan);
        let system = BoundarySystem::for_surface(surface, medium, settings, None)?;
        let evaluation = system.evaluation_matrix(line.points())?;
        Ok(Self {
            fan,
            system,
            line: line.clone(),
            evaluation,
        })
    }

    pub fn radius(&self) -> f64 {
        self.fan.radius()
    }

    pub fn system(&self) -> &BoundarySystem {
        &self.system
    }

    pub fn line(&self) -> &MeasurementLine {
        &self.line
    }

    /// `G^sc(x_k, z, p; R)` stacked over the line.
    pub fn scattered(&self, z: Point2, p: ComplexPair) -> Result<CVector> {
        self.system.check_target(z)?;
        let data = self.system.incident_data(&[(z, p)])?;
        let density = self.system.solve(&data)?;
        Ok(CVector::from_column_slice((&self.evaluation * density).as_slice()))
    }
}

/// `Gamma(x_k, z) p` stacked over the line; with `auxiliary`, the fan's
/// scattered field is added.
pub fn assemble_rhs(
    z: Point2,
    p: ComplexPair,
    line: &MeasurementLine,
    medium: &ElasticMedium,
    auxiliary: Option<&AuxiliaryField>,
) -> Result<RhsVector> {
    if !(z.x2 < line.height()) {
        return Err(Error::SampleAboveLine {
            x2: z.x2,
            line: line.height(),
        });
    }
    let kernel = KupradzeKernel::new(*medium);
    let mut entries = CVector::zeros(2 * line.len());
    for (k, &x) in line.points().iter().enumerate() {
        let v = kernel.tensor(x, z)? * p;
        entries[2 * k] = v[0];
        entries[2 * k + 1] = v[1];
    }
    let mode = match auxiliary {
        None => SamplingMode::IncidentOnly,
        Some(aux) => {
            if aux.line != *line {
                return Err(Error::InvalidParameter(
                    "auxiliary field was built for a different line",
                ));
            }
            entries += aux.scattered(z, p)?;
            SamplingMode::Modified { radius: aux.radius() }
        }
    };
    Ok(RhsVector {
        entries,
        sample_point: z,
        polarization: p,
        mode,
    })
}
