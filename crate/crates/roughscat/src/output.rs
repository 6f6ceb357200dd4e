//! Plot-ready text and image outputs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use roughscat_core::sampling::IndicatorField;

use crate::{HarnessError, Result};

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| HarnessError::io(path, e))
}

/// `x1,x2,raw,normalized`, one line per grid point in grid order.
pub fn indicator_csv(field: &IndicatorField) -> String {
    let mut s = String::from("x1,x2,raw,normalized\n");
    for ((p, raw), norm) in field.grid.points().iter().zip(&field.raw).zip(&field.normalized) {
        writeln!(s, "{},{},{:e},{}", p.x1, p.x2, raw, norm).expect("writing to a string");
    }
    s
}

/// Binary graymap, one pixel per grid point, top row at the largest `x2`,
/// intensity `round(255 NInd)`.
pub fn indicator_pgm(field: &IndicatorField) -> Vec<u8> {
    let (w, h) = (field.grid.columns(), field.grid.rows());
    let mut bytes = format!("P5\n{w} {h}\n255\n").into_bytes();
    for row in (0..h).rev() {
        for col in 0..w {
            let v = field.at(row, col).clamp(0.0, 1.0);
            bytes.push((255.0 * v).round() as u8);
        }
    }
    bytes
}

pub fn surface_csv(points: &[(f64, f64)]) -> String {
    let mut s = String::from("x1,height\n");
    for (x1, h) in points {
        writeln!(s, "{x1},{h}").expect("writing to a string");
    }
    s
}

pub fn write_indicator_csv(path: &Path, field: &IndicatorField) -> Result<()> {
    write(path, indicator_csv(field).as_bytes())
}

pub fn write_indicator_pgm(path: &Path, field: &IndicatorField) -> Result<()> {
    write(path, &indicator_pgm(field))
}

pub fn write_surface_csv(path: &Path, points: &[(f64, f64)]) -> Result<()> {
    write(path, surface_csv(points).as_bytes())
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    write(path, text.as_bytes())
}
