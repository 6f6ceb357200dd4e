//! Binary near-field matrix files.
//!
//! Layout, little-endian throughout:
//!
//! | bytes          | content                                          |
//! |----------------|--------------------------------------------------|
//! | 8              | magic `RSNFMAT1`                                 |
//! | 4              | format version (`u32`)                           |
//! | 8              | number of measurement points `N` (`u64`)         |
//! | `16 (2N)^2`    | entries row-major, each as `(re, im)` `f64` pair |
//! | rest           | UTF-8 TOML metadata footer                       |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use roughscat_core::elastic::ElasticMedium;
use roughscat_core::geometry::MeasurementLine;
use roughscat_core::linalg::CMatrix;
use roughscat_core::sampling::{NearFieldMatrix, Provenance, SamplingMode};
use roughscat_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{LineConfig, MediumConfig};
use crate::{HarnessError, Result};

pub const MAGIC: [u8; 8] = *b"RSNFMAT1";
pub const VERSION: u32 = 1;

/// Footer contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixMetadata {
    pub medium: MediumConfig,
    pub line: LineConfig,
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub noise_level: f64,
    pub nodes_per_wavelength: f64,
    pub panel_order: usize,
    pub eta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan_radius: Option<f64>,
}

impl MatrixMetadata {
    pub fn of(matrix: &NearFieldMatrix) -> Self {
        let (m, l, p) = (matrix.medium(), matrix.line(), matrix.provenance());
        Self {
            medium: MediumConfig {
                lambda: m.lambda,
                mu: m.mu,
                omega: m.omega,
            },
            line: LineConfig {
                a: l.half_width(),
                b: l.height(),
                n: l.len(),
            },
            surface: p.surface.clone(),
            seed: p.seed,
            noise_level: matrix.noise_level(),
            nodes_per_wavelength: p.nodes_per_wavelength,
            panel_order: p.panel_order,
            eta: p.eta,
            fan_radius: match p.mode {
                SamplingMode::IncidentOnly => None,
                SamplingMode::Modified { radius } => Some(radius),
            },
        }
    }
}

pub fn write_matrix(path: &Path, matrix: &NearFieldMatrix) -> Result<()> {
    let io = |e| HarnessError::io(path, e);
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    out.write_all(&encode(matrix)?).map_err(io)?;
    out.flush().map_err(io)
}

pub fn read_matrix(path: &Path) -> Result<NearFieldMatrix> {
    let mut bytes = Vec::new();
    BufReader::new(File::open(path).map_err(|e| HarnessError::io(path, e))?)
        .read_to_end(&mut bytes)
        .map_err(|e| HarnessError::io(path, e))?;
    decode(&bytes)
}

pub fn encode(matrix: &NearFieldMatrix) -> Result<Vec<u8>> {
    let n = matrix.points();
    let dim = 2 * n;
    let footer = toml::to_string(&MatrixMetadata::of(matrix)).map_err(|e| HarnessError::Format(e.to_string()))?;
    let mut bytes = Vec::with_capacity(20 + 16 * dim * dim + footer.len());
    bytes.extend_from_slice(&MAGIC);
    bytes.extend_from_slice(&VERSION.to_le_bytes());
    bytes.extend_from_slice(&(n as u64).to_le_bytes());
    let entries = matrix.entries();
    for i in 0..dim {
        for j in 0..dim {
            let z = entries[(i, j)];
            bytes.extend_from_slice(&z.re.to_le_bytes());
            bytes.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    bytes.extend_from_slice(footer.as_bytes());
    Ok(bytes)
}

fn take<'a>(bytes: &mut &'a [u8], len: usize) -> Result<&'a [u8]> {
    if bytes.len() < len {
        return Err(HarnessError::Format("truncated file".into()));
    }
    let (head, tail) = bytes.split_at(len);
    *bytes = tail;
    Ok(head)
}

fn f64_at(chunk: &[u8]) -> f64 {
    f64::from_le_bytes(chunk.try_into().expect("eight bytes"))
}

pub fn decode(mut bytes: &[u8]) -> Result<NearFieldMatrix> {
    let rest = &mut bytes;
    if take(rest, 8)? != MAGIC {
        return Err(HarnessError::Format("bad magic".into()));
    }
    let version = u32::from_le_bytes(take(rest, 4)?.try_into().expect("four bytes"));
    if version != VERSION {
        return Err(HarnessError::Format(format!("unsupported version {version}")));
    }
    let n = u64::from_le_bytes(take(rest, 8)?.try_into().expect("eight bytes"));
    let dim = usize::try_from(n)
        .ok()
        .and_then(|n| n.checked_mul(2))
        .filter(|d| d.checked_mul(*d).and_then(|c| c.checked_mul(16)).is_some())
        .ok_or_else(|| HarnessError::Format(format!("implausible N = {n}")))?;
    let body = take(rest, 16 * dim * dim)?;
    let entries = CMatrix::from_fn(dim, dim, |i, j| {
        let k = 16 * (i * dim + j);
        Complex64::new(f64_at(&body[k..k + 8]), f64_at(&body[k + 8..k + 16]))
    });
    let footer = std::str::from_utf8(rest).map_err(|e| HarnessError::Format(e.to_string()))?;
    let meta: MatrixMetadata = toml::from_str(footer).map_err(|e| HarnessError::Format(e.to_string()))?;
    if meta.line.n as u64 != n {
        return Err(HarnessError::Format(format!(
            "footer N = {} but header N = {n}",
            meta.line.n
        )));
    }
    let medium = ElasticMedium::new(meta.medium.lambda, meta.medium.mu, meta.medium.omega)?;
    let line = MeasurementLine::new(meta.line.a, meta.line.b, meta.line.n)?;
    let provenance = Provenance {
        surface: meta.surface,
        nodes_per_wavelength: meta.nodes_per_wavelength,
        panel_order: meta.panel_order,
        eta: meta.eta,
        seed: meta.seed,
        mode: match meta.fan_radius {
            None => SamplingMode::IncidentOnly,
            Some(radius) => SamplingMode::Modified { radius },
        },
    };
    Ok(NearFieldMatrix::new(
        entries,
        line,
        medium,
        meta.noise_level,
        provenance,
    )?)
}
