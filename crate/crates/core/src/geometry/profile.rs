//! Height profiles `x2 = f(x1)` of the scattering surfaces.

use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A surface given as the graph of a height function that is constant
/// outside a bounded window.
pub trait Surface: core::fmt::Debug + Send + Sync {
    fn height(&self, x1: f64) -> f64;
    fn slope(&self, x1: f64) -> f64;
    /// Height for `|x1| >= flat_beyond()`.
    fn far_height(&self) -> f64;
    fn flat_beyond(&self) -> f64;
    /// Abscissae where some derivative of `f` jumps; panels break there.
    fn breakpoints(&self) -> Vec<f64>;
    /// Abscissae where `f` itself has a kink; panels are graded there.
    fn corners(&self) -> Vec<f64> {
        Vec::new()
    }
    /// Strict lower and upper bounds `(f_minus, f_plus)`.
    fn bounds(&self) -> (f64, f64);
    /// Short identifier used in provenance records.
    fn label(&self) -> String;
}

/// Compactly supported bump `amplitude * exp(1 - 1 / (1 - t^2))`, `t = (x1 - center) / width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl Bump {
    fn value_slope(&self, x1: f64) -> (f64, f64) {
        let t = (x1 - self.center) / self.width;
        if t.abs() >= 1.0 {
            return (0.0, 0.0);
        }
        let s = 1.0 - t * t;
        let v = self.amplitude * libm::exp(1.0 - 1.0 / s);
        (v, v * (-2.0 * t / (s * s)) / self.width)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileShape {
    Flat,
    /// `0.8 exp(16 / (x^2 - 16))` on `|x| < 4`.
    Example1,
    /// Cubic B-spline `Omega_3`.
    Example2,
    /// `0.15 sin x`, blended to the plane.
    Example3,
    /// `0.18 sin x + 0.15 cos(x / 2)`, blended to the plane.
    Example4,
    Bumps(Vec<Bump>),
}

/// Height `base + perturbation(x1)`, with periodic perturbations blended
/// to zero over `[A0 - blend_width, A0]` by a quintic smoothstep.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceProfile {
    shape: ProfileShape,
    base: f64,
    truncation_halfwidth: f64,
    blend_width: f64,
    f_minus: f64,
    f_plus: f64,
}

pub const DEFAULT_BASE: f64 = 0.5;
pub const DEFAULT_TRUNCATION: f64 = 15.0;
pub const DEFAULT_BLEND: f64 = 2.0;
const BOUND_MARGIN: f64 = 1e-6;

impl SurfaceProfile {
    pub fn flat(height: f64) -> Result<Self> {
        Self::build(ProfileShape::Flat, height, 0.0, DEFAULT_BLEND)
    }

    /// Sum of bumps on a plane.
    pub fn bumps(base: f64, bumps: Vec<Bump>) -> Result<Self> {
        if bumps
            .iter()
            .any(|b| !(b.width > 0.0) || !b.center.is_finite() || !b.amplitude.is_finite())
        {
            return Err(Error::InvalidParameter("bump width > 0 and finite parameters required"));
        }
        let reach = bumps.iter().map(|b| b.center.abs() + b.width).fold(0.0, f64::max);
        Self::build(ProfileShape::Bumps(bumps), base, reach, DEFAULT_BLEND)
    }

    /// Example `id` with the default truncation window for the periodic ones.
    pub fn example(id: u8) -> Result<Self> {
        Self::example_truncated(id, DEFAULT_TRUNCATION)
    }

    pub fn example_truncated(id: u8, truncation_halfwidth: f64) -> Result<Self> {
        let (shape, reach) = match id {
            1 => (ProfileShape::Example1, 4.0),
            2 => (ProfileShape::Example2, 2.0),
            3 => (ProfileShape::Example3, truncation_halfwidth),
            4 => (ProfileShape::Example4, truncation_halfwidth),
            _ => return Err(Error::InvalidProfileId(id)),
        };
        if matches!(id, 3 | 4) && !(truncation_halfwidth > DEFAULT_BLEND) {
            return Err(Error::InvalidParameter(
                "truncation half-width must exceed the blend width",
            ));
        }
        Self::build(shape, DEFAULT_BASE, reach, DEFAULT_BLEND)
    }

    fn build(shape: ProfileShape, base: f64, reach: f64, blend_width: f64) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::InvalidParameter("finite base height required"));
        }
        let mut p = Self {
            shape,
            base,
            truncation_halfwidth: reach,
            blend_width,
            f_minus: base,
            f_plus: base,
        };
        let (lo, hi) = p.sampled_range();
        p.f_minus = lo - BOUND_MARGIN;
        p.f_plus = hi + BOUND_MARGIN;
        Ok(p)
    }

    fn sampled_range(&self) -> (f64, f64) {
        let reach = self.truncation_halfwidth;
        let step = match &self.shape {
            ProfileShape::Bumps(b) => b.iter().map(|b| b.width / 200.0).fold(1e-3, f64::min),
            _ => 1e-3,
        };
        let n = libm::ceil(2.0 * reach / step) as usize;
        (0..=n)
            .map(|k| self.height(-reach + k as f64 * step))
            .fold((self.base, self.base), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    pub fn shape(&self) -> &ProfileShape {
        &self.shape
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    /// `A0`: the profile equals `base` for `|x1| >= A0`.
    pub fn truncation_halfwidth(&self) -> f64 {
        self.truncation_halfwidth
    }

    pub fn blend_width(&self) -> f64 {
        self.blend_width
    }

    pub fn f_minus(&self) -> f64 {
        self.f_minus
    }

    pub fn f_plus(&self) -> f64 {
        self.f_plus
    }

    fn blended(&self) -> bool {
        matches!(self.shape, ProfileShape::Example3 | ProfileShape::Example4)
    }

    /// Raw perturbation and its derivative before blending.
    fn perturbation(&self, x: f64) -> (f64, f64) {
        match &self.shape {
            ProfileShape::Flat => (0.0, 0.0),
            ProfileShape::Example1 => {
                if x.abs() >= 4.0 {
                    return (0.0, 0.0);
                }
                let d = x * x - 16.0;
                let v = 0.8 * libm::exp(16.0 / d);
                (v, v * (-32.0 * x / (d * d)))
            }
            ProfileShape::Example2 => {
                let a = x.abs();
                let s = x.signum();
                if a <= 1.0 {
                    (0.5 * a * a * a - a * a + 2.0 / 3.0, s * (1.5 * a * a - 2.0 * a))
                } else if a < 2.0 {
                    (
                        -a * a * a / 6.0 + a * a - 2.0 * a + 4.0 / 3.0,
                        s * (-0.5 * a * a + 2.0 * a - 2.0),
                    )
                } else {
                    (0.0, 0.0)
                }
            }
            ProfileShape::Example3 => (0.15 * libm::sin(x), 0.15 * libm::cos(x)),
            ProfileShape::Example4 => (
                0.18 * libm::sin(x) + 0.15 * libm::cos(0.5 * x),
                0.18 * libm::cos(x) - 0.075 * libm::sin(0.5 * x),
            ),
            ProfileShape::Bumps(bumps) => bumps.iter().fold((0.0, 0.0), |(v, d), b| {
                let (bv, bd) = b.value_slope(x);
                (v + bv, d + bd)
            }),
        }
    }

    /// Smoothstep weight and its derivative in `x`.
    fn window(&self, x: f64) -> (f64, f64) {
        let a = x.abs();
        let inner = self.truncation_halfwidth - self.blend_width;
        if a <= inner {
            (1.0, 0.0)
        } else if a >= self.truncation_halfwidth {
            (0.0, 0.0)
        } else {
            let t = (a - inner) / self.blend_width;
            let s = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
            let ds = 30.0 * t * t * (1.0 - t) * (1.0 - t) / self.blend_width;
            (1.0 - s, -ds * x.signum())
        }
    }

    fn eval(&self, x: f64) -> (f64, f64) {
        let (p, dp) = self.perturbation(x);
        if self.blended() {
            let (w, dw) = self.window(x);
            (self.base + w * p, w * dp + dw * p)
        } else {
            (self.base + p, dp)
        }
    }
}

impl Surface for SurfaceProfile {
    fn height(&self, x1: f64) -> f64 {
        self.eval(x1).0
    }

    fn slope(&self, x1: f64) -> f64 {
        self.eval(x1).1
    }

    fn far_height(&self) -> f64 {
        self.base
    }

    fn flat_beyond(&self) -> f64 {
        self.truncation_halfwidth
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut out = match &self.shape {
            ProfileShape::Flat => Vec::new(),
            ProfileShape::Example1 => alloc::vec![-4.0, 4.0],
            ProfileShape::Example2 => alloc::vec![-2.0, -1.0, 0.0, 1.0, 2.0],
            ProfileShape::Example3 | ProfileShape::Example4 => {
                let (a, w) = (self.truncation_halfwidth, self.blend_width);
                alloc::vec![-a, -(a - w), a - w, a]
            }
            ProfileShape::Bumps(b) => b
                .iter()
                .flat_map(|b| [b.center - b.width, b.center + b.width])
                .collect(),
        };
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    fn bounds(&self) -> (f64, f64) {
        (self.f_minus, self.f_plus)
    }

    fn label(&self) -> String {
        match &self.shape {
            ProfileShape::Flat => format!("flat-{}", self.base),
            ProfileShape::Example1 => "example-1".into(),
            ProfileShape::Example2 => "example-2".into(),
            ProfileShape::Example3 => format!("example-3-a{}", self.truncation_halfwidth),
            ProfileShape::Example4 => format!("example-4-a{}", self.truncation_halfwidth),
            ProfileShape::Bumps(b) => format!("bumps-{}", b.len()),
        }
    }
}

/// Profile of Example `id` (1 to 4) with default truncation.
pub fn example_profile(id: u8) -> Result<SurfaceProfile> {
    SurfaceProfile::example(id)
}
