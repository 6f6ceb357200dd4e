use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("argument {x} outside the domain of {function}")]
    Domain { function: &'static str, x: f64 },
    #[error("coincident points (r = {distance:e})")]
    CoincidentPoints { distance: f64 },
    #[error("near-resonant Fourier symbol at xi = {xi} (|xi^2 + gamma_p gamma_s| = {denominator:e})")]
    NearResonance { xi: f64, denominator: f64 },
    #[error("target x2 = {target} is not above the sample line x2 = {line}")]
    TargetBelowLine { target: f64, line: f64 },
    #[error("unknown example profile {0} (expected 1..=4)")]
    InvalidProfileId(u8),
    #[error("window [{lo}, {hi}] does not cover the surface perturbation |x1| <= {required}")]
    WindowTooSmall { lo: f64, hi: f64, required: f64 },
    #[error("fan radius {0} is too small to intersect the plane")]
    FanRadiusTooSmall(f64),
    #[error("invalid count: {0}")]
    InvalidCount(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundary system is singular (condition estimate {condition:e})")]
    SingularMatrix { condition: f64 },
    #[error("evaluation point at distance {distance:e} from the boundary, below one mesh width {spacing:e}")]
    TooCloseToBoundary { distance: f64, spacing: f64 },
    #[error("point ({x1}, {x2}) is not above the surface")]
    BelowSurface { x1: f64, x2: f64 },
    #[error("sampling point x2 = {x2} is not below the measurement line x2 = {line}")]
    SampleAboveLine { x2: f64, line: f64 },
    #[error("indicator of a zero vector")]
    ZeroVector,
    #[error("singular value decomposition failed to converge")]
    DecompositionFailed,
}
