//! Measurement lines and sampling grids.

use alloc::vec::Vec;

use crate::elastic::Point2;
use crate::{Error, Result};

/// `n` equispaced points on `{|x1| <= a, x2 = b}`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementLine {
    a: f64,
    b: f64,
    points: Vec<Point2>,
}

impl MeasurementLine {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCount("measurement line needs N >= 2"));
        }
        if !(a > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter("measurement half-width a > 0 required"));
        }
        let step = 2.0 * a / (n - 1) as f64;
        let points = (0..n)
            .map(|k| {
                let x1 = if k == n - 1 { a } else { -a + k as f64 * step };
                Point2::new(x1, b)
            })
            .collect();
        Ok(Self { a, b, points })
    }

    pub fn half_width(&self) -> f64 {
        self.a
    }

    pub fn height(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.a / (self.points.len() - 1) as f64
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }
}

pub fn measurement_line(a: f64, b: f64, n: usize) -> Result<MeasurementLine> {
    MeasurementLine::new(a, b, n)
}

/// Row-major grid: `x1` varies fastest, rows ordered by increasing `x2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid {
    x1_range: (f64, f64),
    x2_range: (f64, f64),
    step_x1: f64,
    step_x2: f64,
    columns: usize,
    rows: usize,
    points: Vec<Point2>,
}

/// Tolerance, in steps, when counting grid lines inside a range.
const COUNT_SLACK: f64 = 1e-9;

impl SamplingGrid {
    /// Points `x1_lo + i step_x1 <= x1_hi` and `x2_lo + j step_x2 <= x2_hi`.
    pub fn new(x1_range: (f64, f64), x2_range: (f64, f64), step_x1: f64, step_x2: f64) -> Result<Self> {
        let count = |(lo, hi): (f64, f64), step: f64| -> Result<usize> {
            if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
                return Err(Error::InvalidParameter("grid range must be nonempty"));
            }
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::InvalidParameter("grid step must be positive"));
            }
            Ok(libm::floor((hi - lo) / step + COUNT_SLACK) as usize + 1)
        };
        let columns = count(x1_range, step_x1)?;
        let rows = count(x2_range, step_x2)?;
        let mut points = Vec::with_capacity(rows * columns);
        for j in 0..rows {
            for i in 0..columns {
                points.push(Point2::new(
                    x1_range.0 + i as f64 * step_x1,
                    x2_range.0 + j as f64 * step_x2,
                ));
            }
        }
        Ok(Self {
            x1_range,
            x2_range,
            step_x1,
            step_x2,
            columns,
            rows,
            points,
        })
    }

    /// `[-5, 5] x [0.09, 0.9]` with steps `0.1` and `0.09`: 101 x 10 points.
    pub fn standard() -> Self {
        Self::new((-5.0, 5.0), (0.09, 0.9), 0.1, 0.09).expect("static grid parameters are valid")
    }

    pub fn x1_range(&self) -> (f64, f64) {
        self.x1_range
    }

    pub fn x2_range(&self) -> (f64, f64) {
        self.x2_range
    }

    pub fn steps(&self) -> (f64, f64) {
        (self.step_x1, self.step_x2)
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    /// Index of the point in row `row`, column `col`.
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.columns + col
    }
}

/// `(x1 range, x2 range, x1 step, x2 step)`.
pub type GridSpec = ((f64, f64), (f64, f64), f64, f64);

/// The default grid, or a custom one.
pub fn sampling_grid(custom: Option<GridSpec>) -> Result<SamplingGrid> {
    match custom {
        None => Ok(SamplingGrid::standard()),
        Some((r1, r2, s1, s2)) => SamplingGrid::new(r1, r2, s1, s2),
    }
}
