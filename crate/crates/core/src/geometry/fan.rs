//! Fan-shaped auxiliary surface: the plane `x2 = 0.5` with the chord between
//! its intersections with a large circle replaced by the lower arc.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::profile::Surface;
use crate::elastic::Point2;
use crate::{Error, Result};

pub const FAN_PLANE_HEIGHT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliarySurface {
    r: f64,
    plane_height: f64,
    arc_center: Point2,
    chord: f64,
}

impl AuxiliarySurface {
    /// Circle of radius `r` centred at `(0, sqrt(3) r / 2)`.
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::FanRadiusTooSmall(r));
        }
        let c = 0.5 * libm::sqrt(3.0) * r;
        let drop = c - FAN_PLANE_HEIGHT;
        let chord = libm::sqrt((r - drop) * (r + drop));
        Ok(Self {
            r,
            plane_height: FAN_PLANE_HEIGHT,
            arc_center: Point2::new(0.0, c),
            chord,
        })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn plane_height(&self) -> f64 {
        self.plane_height
    }

    pub fn arc_center(&self) -> Point2 {
        self.arc_center
    }

    /// Half-length of the chord cut from the plane.
    pub fn chord_halfwidth(&self) -> f64 {
        self.chord
    }

    pub fn lowest_point(&self) -> Point2 {
        Point2::new(0.0, self.arc_center.x2 - self.r)
    }

    /// Half of the angle the arc subtends at the centre.
    pub fn half_angle(&self) -> f64 {
        libm::atan2(self.chord, self.arc_center.x2 - self.plane_height)
    }
}

impl Surface for AuxiliarySurface {
    fn height(&self, x1: f64) -> f64 {
        if x1.abs() < self.chord {
            self.arc_center.x2 - libm::sqrt((self.r - x1) * (self.r + x1))
        } else {
            self.plane_height
        }
    }

    fn slope(&self, x1: f64) -> f64 {
        if x1.abs() < self.chord {
            x1 / libm::sqrt((self.r - x1) * (self.r + x1))
        } else {
            0.0
        }
    }

    fn far_height(&self) -> f64 {
        self.plane_height
    }

    fn flat_beyond(&self) -> f64 {
        self.chord
    }

    fn breakpoints(&self) -> Vec<f64> {
        alloc::vec![-self.chord, self.chord]
    }

    fn corners(&self) -> Vec<f64> {
        alloc::vec![-self.chord, self.chord]
    }

    fn bounds(&self) -> (f64, f64) {
        (self.lowest_point().x2 - 1e-6, self.plane_height + 1e-6)
    }

    fn label(&self) -> String {
        format!("fan-r{}", self.r)
    }
}

/// The fan surface of radius `r`.
pub fn fan_surface(r: f64) -> Result<AuxiliarySurface> {
    AuxiliarySurface::new(r)
}
