use core::ops::{Add, Mul, Sub};

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x1, self.x2)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x1 * s, self.x2 * s)
    }
}

/// Unit vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction2 {
    x1: f64,
    x2: f64,
}

impl Direction2 {
    pub const UP: Direction2 = Direction2 { x1: 0.0, x2: 1.0 };

    /// Normalises `(x1, x2)`; `None` for the zero vector.
    pub fn new(x1: f64, x2: f64) -> Option<Self> {
        let n = libm::hypot(x1, x2);
        (n > 0.0 && n.is_finite()).then(|| Self { x1: x1 / n, x2: x2 / n })
    }

    pub fn x1(self) -> f64 {
        self.x1
    }

    pub fn x2(self) -> f64 {
        self.x2
    }

    pub fn as_point(self) -> Point2 {
        Point2::new(self.x1, self.x2)
    }

    /// Rotation by +90 degrees.
    pub fn left_normal(self) -> Direction2 {
        Direction2 {
            x1: -self.x2,
            x2: self.x1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_is_unit() {
        let d = Direction2::new(3.0, -4.0).unwrap();
        assert!((d.x1() * d.x1() + d.x2() * d.x2() - 1.0).abs() < 1e-12);
        assert!(Direction2::new(0.0, 0.0).is_none());
        let n = Direction2::new(1.0, 0.0).unwrap().left_normal();
        assert_eq!((n.x1(), n.x2()), (0.0, 1.0));
    }
}
