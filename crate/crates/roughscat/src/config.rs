//! Experiment configuration, read from and written to TOML.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use roughscat_core::elastic::{ComplexPair, ElasticMedium};
use roughscat_core::geometry::{
    Bump, MeasurementLine, Refinement, SamplingGrid, Surface, SurfaceProfile, DEFAULT_TRUNCATION,
};
use roughscat_core::sampling::DEFAULT_ALPHA;
use roughscat_core::solver::SolverSettings;
use roughscat_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

/// Largest fan radius accepted by the decay study.
pub const MAX_FAN_RADIUS: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    pub lambda: f64,
    pub mu: f64,
    pub omega: f64,
}

impl Default for MediumConfig {
    fn default() -> Self {
        Self {
            lambda: 9.0,
            mu: 3.0,
            omega: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpConfig {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

/// Which surface to scatter from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SurfaceSpec {
    /// One of the four reference profiles; `truncation` is the blend end
    /// `A0` of the periodic ones.
    Example {
        id: u8,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        truncation: Option<f64>,
    },
    Flat {
        height: f64,
    },
    Bumps {
        base: f64,
        bumps: Vec<BumpConfig>,
    },
}

impl Default for SurfaceSpec {
    fn default() -> Self {
        SurfaceSpec::Example {
            id: 1,
            truncation: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineConfig {
    /// Half-width of the aperture.
    pub a: f64,
    /// Height of the line.
    pub b: f64,
    /// Number of measurement points.
    pub n: usize,
}

impl Default for LineConfig {
    fn default() -> Self {
        Self {
            a: 10.0,
            b: 1.0,
            n: 401,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x1: [f64; 2],
    pub x2: [f64; 2],
    pub step_x1: f64,
    pub step_x2: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        let g = SamplingGrid::standard();
        let (x1, x2) = (g.x1_range(), g.x2_range());
        let (s1, s2) = g.steps();
        Self {
            x1: [x1.0, x1.1],
            x2: [x2.0, x2.1],
            step_x1: s1,
            step_x2: s2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub nodes_per_wavelength: f64,
    pub panel_order: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let s = SolverSettings::default();
        Self {
            nodes_per_wavelength: s.nodes_per_wavelength,
            panel_order: s.panel_order,
        }
    }
}

/// Complex polarisation `re + i im`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Polarization {
    pub re: [f64; 2],
    #[serde(default)]
    pub im: [f64; 2],
}

impl Polarization {
    pub fn vertical() -> Self {
        Self {
            re: [0.0, 1.0],
            im: [0.0, 0.0],
        }
    }

    pub fn to_pair(self) -> ComplexPair {
        ComplexPair::new(
            Complex64::new(self.re[0], self.im[0]),
            Complex64::new(self.re[1], self.im[1]),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    IncidentOnly,
    /// Right-hand sides include the fan surface's scattered field.
    Modified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub medium: MediumConfig,
    pub surface: SurfaceSpec,
    pub line: LineConfig,
    pub grid: GridConfig,
    pub solver: SolverConfig,
    pub alpha: f64,
    /// Relative noise levels; one reconstruction per entry.
    pub noise: Vec<f64>,
    pub seed: u64,
    pub mode: Mode,
    /// Fan radius for the modified mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fan_radius: Option<f64>,
    /// Radii of the decay study.
    pub decay_radii: Vec<f64>,
    pub polarizations: Vec<Polarization>,
    /// Threshold on the normalised indicator for surface extraction.
    pub cutoff: f64,
    pub output: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            medium: MediumConfig::default(),
            surface: SurfaceSpec::default(),
            line: LineConfig::default(),
            grid: GridConfig::default(),
            solver: SolverConfig::default(),
            alpha: DEFAULT_ALPHA,
            noise: vec![0.0],
            seed: 0,
            mode: Mode::IncidentOnly,
            fan_radius: None,
            decay_radii: vec![50.0, 100.0, 200.0, 400.0],
            polarizations: vec![Polarization::vertical()],
            cutoff: 0.5,
            output: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    /// Defaults with reference surface `id`.
    ///
    /// Example 2 peaks at `x2 = 7/6`, above the default line, so its preset
    /// raises the line to `b = 1.5` and extends the grid to `x2 = 1.44`.
    pub fn example(id: u8) -> Result<Self> {
        SurfaceProfile::example(id)?;
        let mut config = Self {
            surface: SurfaceSpec::Example { id, truncation: None },
            ..Self::default()
        };
        if id == 2 {
            config.line.b = 1.5;
            config.grid.x2[1] = 1.44;
        }
        Ok(config)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml(&text)
    }

    /// Builds every derived object once to surface invalid parameters early.
    pub fn validate(&self) -> Result<()> {
        self.medium()?;
        self.surface()?;
        self.line()?;
        self.grid()?;
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(HarnessError::Config("alpha must be positive".into()));
        }
        if self.noise.iter().any(|d| !(*d >= 0.0 && d.is_finite())) {
            return Err(HarnessError::Config("noise levels must be nonnegative".into()));
        }
        if !(self.cutoff > 0.0 && self.cutoff < 1.0) {
            return Err(HarnessError::Config("cutoff must lie in (0, 1)".into()));
        }
        if self.polarizations.is_empty() {
            return Err(HarnessError::Config("at least one polarization required".into()));
        }
        if !(self.solver.nodes_per_wavelength > 0.0) || self.solver.panel_order < 2 {
            return Err(HarnessError::Config(
                "solver needs positive density and order >= 2".into(),
            ));
        }
        if self.mode == Mode::Modified && self.fan_radius.is_none() {
            return Err(HarnessError::Config("modified mode needs fan_radius".into()));
        }
        for &r in self.fan_radius.iter().chain(&self.decay_radii) {
            if !(r > 0.0 && r <= MAX_FAN_RADIUS) {
                return Err(HarnessError::Config(format!(
                    "fan radius {r} outside (0, {MAX_FAN_RADIUS}]"
                )));
            }
        }
        Ok(())
    }

    pub fn medium(&self) -> Result<ElasticMedium> {
        let m = self.medium;
        Ok(ElasticMedium::new(m.lambda, m.mu, m.omega)?)
    }

    pub fn surface(&self) -> Result<Arc<dyn Surface>> {
        let profile = match &self.surface {
            SurfaceSpec::Example { id, truncation } => {
                SurfaceProfile::example_truncated(*id, truncation.unwrap_or(DEFAULT_TRUNCATION))?
            }
            SurfaceSpec::Flat { height } => SurfaceProfile::flat(*height)?,
            SurfaceSpec::Bumps { base, bumps } => SurfaceProfile::bumps(
                *base,
                bumps
                    .iter()
                    .map(|b| Bump {
                        center: b.center,
                        width: b.width,
                        amplitude: b.amplitude,
                    })
                    .collect(),
            )?,
        };
        Ok(Arc::new(profile))
    }

    /// Short identifier of the surface, as recorded in matrix files.
    pub fn surface_id(&self) -> Result<String> {
        Ok(self.surface()?.label())
    }

    pub fn line(&self) -> Result<MeasurementLine> {
        Ok(MeasurementLine::new(self.line.a, self.line.b, self.line.n)?)
    }

    pub fn grid(&self) -> Result<SamplingGrid> {
        let g = self.grid;
        Ok(SamplingGrid::new(
            (g.x1[0], g.x1[1]),
            (g.x2[0], g.x2[1]),
            g.step_x1,
            g.step_x2,
        )?)
    }

    pub fn solver_settings(&self) -> SolverSettings {
        SolverSettings {
            nodes_per_wavelength: self.solver.nodes_per_wavelength,
            panel_order: self.solver.panel_order,
            coupling: None,
        }
    }

    /// Mesh refinement towards the measurement line.
    pub fn refinement(&self) -> Refinement {
        Refinement {
            height: self.line.b,
            half_width: self.line.a,
        }
    }

    pub fn polarization_pairs(&self) -> Vec<ComplexPair> {
        self.polarizations.iter().map(|p| p.to_pair()).collect()
    }

    /// Noise levels to run; an empty list means exact data only.
    pub fn noise_levels(&self) -> Vec<f64> {
        if self.noise.is_empty() {
            vec![0.0]
        } else {
            self.noise.clone()
        }
    }
}
