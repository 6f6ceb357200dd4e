//! Upward continuation of a field from its trace on a horizontal line.
//!
//! The trace, sampled on an equispaced window, is transformed by a direct
//! (trapezoidal) Fourier sum evaluated at quadrature nodes in `xi`. The
//! `xi`-integral is split at the branch points `+-k_p`, `+-k_s`, where the
//! integrand has square-root behaviour, and each piece is mapped so that the
//! mapped integrand is smooth before Gauss-Legendre panels are applied.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::kupradze::ComplexPair;
use super::medium::ElasticMedium;
use super::point::Point2;
use super::symbols::{gamma, projection_matrices};
use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

/// Edge-to-peak ratio of the samples above which truncation is flagged.
pub const EDGE_TOLERANCE: f64 = 1e-8;
const PANEL_ORDER: usize = 16;
const DECAY_CUTOFF: f64 = 1e-13;

/// Result of one upward continuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagated {
    pub value: ComplexPair,
    /// `max(|u_first|, |u_last|) / max_n |u_n|`.
    pub edge_ratio: f64,
    /// Set when `edge_ratio` exceeds [`EDGE_TOLERANCE`].
    pub truncation_warning: bool,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    xi: f64,
    gp: Complex64,
    gs: Complex64,
    /// `M_p u^(xi)` and `M_s u^(xi)` times the quadrature weight over `2 pi`.
    mp_u: ComplexPair,
    ms_u: ComplexPair,
}

/// Precomputed spectrum of a line trace, reusable for many targets.
#[derive(Debug, Clone)]
pub struct AngularSpectrum {
    h: f64,
    center: f64,
    edge_ratio: f64,
    nodes: Vec<Node>,
}

impl AngularSpectrum {
    /// `samples[n]` is the trace at `x1 = x1_start + n * spacing` on `x2 = h`.
    ///
    /// The `xi` resolution assumes targets with `x1` inside the window.
    pub fn new(samples: &[ComplexPair], x1_start: f64, spacing: f64, h: f64, medium: &ElasticMedium) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidCount("at least two line samples required"));
        }
        if !(spacing > 0.0 && spacing.is_finite() && x1_start.is_finite() && h.is_finite()) {
            return Err(Error::InvalidParameter("spacing > 0 and finite window required"));
        }
        let n = samples.len();
        let width = (n - 1) as f64 * spacing;
        let center = x1_start + 0.5 * width;
        let peak = samples.iter().map(|u| u.norm()).fold(0.0, f64::max);
        let edge = samples[0].norm().max(samples[n - 1].norm());
        let edge_ratio = if peak > 0.0 { edge / peak } else { 0.0 };

        let mut spec = Self {
            h,
            center,
            edge_ratio,
            nodes: Vec::new(),
        };
        if peak == 0.0 {
            return Ok(spec);
        }
        let ctx = Transform {
            samples,
            x0: x1_start - center,
            dx: spacing,
            medium,
        };
        let gl = GaussLegendre::new(PANEL_ORDER);
        let panel = 2.0 * PI / width;
        let nyquist = PI / spacing;
        let (kp, ks) = (medium.k_p, medium.k_s);
        let reach = 1.0;
        for sign in [1.0, -1.0] {
            let push = |xi: f64, w: f64, spec: &mut Self| -> Result<f64> {
                let node = ctx.node(sign * xi, w)?;
                spec.nodes.push(node);
                Ok(node.mp_u.norm() + node.ms_u.norm())
            };
            // [0, k_p]: xi = k_p sin(t)
            let pieces = panels(kp * FRAC_PI_2, panel);
            for (a, b) in pieces.iter().copied() {
                for (t, w) in gl.mapped(a / kp, b / kp) {
                    push(kp * libm::sin(t), kp * libm::cos(t) * w, &mut spec)?;
                }
            }
            // [k_p, k_s]: cosine map, singular at both ends
            let len = ks - kp;
            for (a, b) in panels(len * FRAC_PI_2, panel) {
                for (t, w) in gl.mapped(a / (0.5 * len), b / (0.5 * len)) {
                    let xi = kp + 0.5 * len * (1.0 - libm::cos(t));
                    push(xi, 0.5 * len * libm::sin(t) * w, &mut spec)?;
                }
            }
            // [k_s, k_s + reach]: xi = k_s + reach s^2
            for (a, b) in panels(2.0 * reach, panel) {
                for (s, w) in gl.mapped(a / (2.0 * reach), b / (2.0 * reach)) {
                    push(ks + reach * s * s, 2.0 * reach * s * w, &mut spec)?;
                }
            }
            // regular tail until the spectrum has decayed or Nyquist
            let mut lo = ks + reach;
            let mut running = 0.0f64;
            let mut quiet = 0;
            while lo < nyquist && quiet < 4 {
                let hi = (lo + panel).min(nyquist);
                let mut local = 0.0f64;
                for (xi, w) in gl.mapped(lo, hi) {
                    let m = push(xi, w, &mut spec)?;
                    local = local.max(m / w);
                }
                running = running.max(local);
                quiet = if local <= DECAY_CUTOFF * running { quiet + 1 } else { 0 };
                lo = hi;
            }
        }
        Ok(spec)
    }

    pub fn edge_ratio(&self) -> f64 {
        self.edge_ratio
    }

    /// Field at `target`, which must lie strictly above the line.
    pub fn propagate(&self, target: Point2) -> Result<Propagated> {
        if !(target.x2 > self.h) {
            return Err(Error::TargetBelowLine {
                target: target.x2,
                line: self.h,
            });
        }
        let d = target.x2 - self.h;
        let x = target.x1 - self.center;
        let i = Complex64::i();
        let mut value = ComplexPair::zeros();
        for node in &self.nodes {
            let phase = (i * (node.xi * x)).exp();
            let ep = (i * node.gp * d).exp() * phase;
            let es = (i * node.gs * d).exp() * phase;
            value += node.mp_u * ep + node.ms_u * es;
        }
        Ok(Propagated {
            value,
            edge_ratio: self.edge_ratio,
            truncation_warning: self.edge_ratio > EDGE_TOLERANCE,
        })
    }
}

/// Splits `[0, len]` into equal panels no wider than `width`.
fn panels(len: f64, width: f64) -> Vec<(f64, f64)> {
    let count = libm::ceil(len / width).max(1.0) as usize;
    let step = len / count as f64;
    (0..count).map(|k| (k as f64 * step, (k + 1) as f64 * step)).collect()
}

struct Transform<'a> {
    samples: &'a [ComplexPair],
    x0: f64,
    dx: f64,
    medium: &'a ElasticMedium,
}

impl Transform<'_> {
    /// Trapezoidal `sum_n w_n u_n e^{-i xi x_n}`, projected and weighted.
    fn node(&self, xi: f64, weight: f64) -> Result<Node> {
        let step = Complex64::from_polar(1.0, -xi * self.dx);
        let mut phase = Complex64::from_polar(1.0, -xi * self.x0);
        let mut acc = ComplexPair::zeros();
        let last = self.samples.len() - 1;
        for (n, u) in self.samples.iter().enumerate() {
            let w = if n == 0 || n == last { 0.5 } else { 1.0 };
            acc += u * (phase * w);
            phase *= step;
        }
        acc *= Complex64::from(self.dx * weight / (2.0 * PI));
        let (mp, ms) = projection_matrices(xi, self.medium)?;
        Ok(Node {
            xi,
            gp: gamma(self.medium.k_p, xi),
            gs: gamma(self.medium.k_s, xi),
            mp_u: mp * acc,
            ms_u: ms * acc,
        })
    }
}

/// Field at `target` from trace samples on the line `x2 = h`.
pub fn angular_spectrum_propagate(
    line_samples: &[ComplexPair],
    x1_start: f64,
    spacing: f64,
    h: f64,
    target: Point2,
    medium: &ElasticMedium,
) -> Result<Propagated> {
    if !(target.x2 > h) {
        return Err(Error::TargetBelowLine {
            target: target.x2,
            line: h,
        });
    }
    AngularSpectrum::new(line_samples, x1_start, spacing, h, medium)?.propagate(target)
}
