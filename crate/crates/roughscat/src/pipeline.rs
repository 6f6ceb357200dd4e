//! The experiment stages behind each CLI command.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roughscat_core::elastic::{projection_matrices, AngularSpectrum, ComplexPair, ComplexTensor2, Point2};
use roughscat_core::geometry::{fan_surface, Refinement, Surface, SurfaceProfile};
use roughscat_core::sampling::{
    add_noise, extract_surface, run_sampling, run_sampling_polarizations, scattered_matrix, AuxiliaryField,
    IndicatorField, NearFieldMatrix, SamplingMode,
};
use roughscat_core::solver::{
    auxiliary_scattered, boundary_residual, evaluate_scattered, reciprocity_check, solve_point_source, BoundarySystem,
};
use roughscat_core::Complex64;
use serde::Serialize;

use crate::config::{ExperimentConfig, Mode};
use crate::matrix_file::{read_matrix, write_matrix, MatrixMetadata};
use crate::output::{write_indicator_csv, write_indicator_pgm, write_surface_csv, write_text};
use crate::record::RunRecord;
use crate::{HarnessError, Result};

pub const MATRIX_FILE: &str = "matrix.bin";
pub const DECAY_FILE: &str = "decay.csv";
pub const VALIDATION_FILE: &str = "validation.json";

/// Observation points and source of the decay study.
pub const DECAY_TARGETS: [Point2; 3] = [
    Point2 { x1: -1.0, x2: 1.0 },
    Point2 { x1: 0.0, x2: 1.0 },
    Point2 { x1: 1.0, x2: 1.0 },
];
pub const DECAY_SOURCE: Point2 = Point2 { x1: -1.0, x2: 1.0 };

fn vertical() -> ComplexPair {
    ComplexPair::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
}

fn prepare_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

/// Meshes, assembles and factorises the configured surface.
pub fn surface_system(config: &ExperimentConfig) -> Result<BoundarySystem> {
    Ok(BoundarySystem::for_surface(
        config.surface()?,
        config.medium()?,
        &config.solver_settings(),
        Some(config.refinement()),
    )?)
}

/// Scattered near-field matrix of the configured surface on the configured line.
pub fn forward(config: &ExperimentConfig, record: &mut RunRecord) -> Result<NearFieldMatrix> {
    config.validate()?;
    let system = record.time("assemble", || surface_system(config))?;
    record.diagnostic("mesh_nodes", system.mesh().len() as f64);
    record.diagnostic("condition_estimate", system.condition());
    let line = config.line()?;
    let center = Point2::new(0.0, line.height());
    let probe = solve_point_source(&system, center, vertical())?;
    record.diagnostic("linear_residual", probe.linear_residual());
    let mut matrix = record.time("near_field", || scattered_matrix(&system, &line))?;
    if let (Mode::Modified, Some(radius)) = (config.mode, config.fan_radius) {
        matrix.set_mode(SamplingMode::Modified { radius });
    }
    Ok(matrix)
}

/// One reconstruction at one noise level.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub delta: f64,
    pub field: IndicatorField,
    pub surface: Vec<(f64, f64)>,
}

fn check_metadata(config: &ExperimentConfig, matrix: &NearFieldMatrix) -> Result<()> {
    let meta = MatrixMetadata::of(matrix);
    if meta.line != config.line {
        return Err(HarnessError::Mismatch(format!(
            "line {:?} vs configured {:?}",
            meta.line, config.line
        )));
    }
    if meta.medium != config.medium {
        return Err(HarnessError::Mismatch(format!(
            "medium {:?} vs configured {:?}",
            meta.medium, config.medium
        )));
    }
    Ok(())
}

/// Indicator fields and surface estimates for every configured noise level.
/// All levels share the configured seed, so they scale one perturbation.
pub fn sample(config: &ExperimentConfig, matrix: &NearFieldMatrix, record: &mut RunRecord) -> Result<Vec<SampleSet>> {
    config.validate()?;
    check_metadata(config, matrix)?;
    let grid = config.grid()?;
    let auxiliary = match (config.mode, config.fan_radius) {
        (Mode::Modified, Some(radius)) => {
            let medium = config.medium()?;
            Some(record.time("auxiliary", || {
                AuxiliaryField::new(fan_surface(radius)?, medium, &config.solver_settings(), matrix.line())
            })?)
        }
        _ => None,
    };
    let polarizations = config.polarization_pairs();
    let mut sets = Vec::new();
    for delta in config.noise_levels() {
        let noisy = add_noise(matrix, delta, config.seed)?;
        let field = record.time(&format!("sampling delta={delta}"), || {
            if polarizations.len() == 1 {
                run_sampling(&noisy, &grid, polarizations[0], config.alpha, auxiliary.as_ref())
            } else {
                run_sampling_polarizations(&noisy, &grid, &polarizations, config.alpha, auxiliary.as_ref())
            }
        })?;
        let surface = extract_surface(&field, config.cutoff)?;
        sets.push(SampleSet { delta, field, surface });
    }
    Ok(sets)
}

/// File stem for outputs at noise level `delta`.
pub fn noise_tag(delta: f64) -> String {
    format!("delta{delta:.4}")
}

fn write_sets(dir: &Path, sets: &[SampleSet], record: &mut RunRecord) -> Result<()> {
    for set in sets {
        let tag = noise_tag(set.delta);
        let csv = dir.join(format!("indicator_{tag}.csv"));
        let pgm = dir.join(format!("indicator_{tag}.pgm"));
        let surface = dir.join(format!("surface_{tag}.csv"));
        write_indicator_csv(&csv, &set.field)?;
        write_indicator_pgm(&pgm, &set.field)?;
        write_surface_csv(&surface, &set.surface)?;
        record.output(csv);
        record.output(pgm);
        record.output(surface);
    }
    Ok(())
}

fn write_config(dir: &Path, config: &ExperimentConfig, record: &mut RunRecord) -> Result<()> {
    let path = dir.join("config.toml");
    write_text(&path, &config.to_toml()?)?;
    record.output(path);
    Ok(())
}

pub fn cmd_forward(config: &ExperimentConfig) -> Result<RunRecord> {
    let dir = &config.output;
    prepare_dir(dir)?;
    let mut record = RunRecord::new("forward", config);
    let matrix = forward(config, &mut record)?;
    let path = dir.join(MATRIX_FILE);
    write_matrix(&path, &matrix)?;
    record.output(path);
    write_config(dir, config, &mut record)?;
    record.finish(dir)
}

pub fn cmd_sample(config: &ExperimentConfig, matrix_path: &Path) -> Result<RunRecord> {
    let dir = &config.output;
    prepare_dir(dir)?;
    let mut record = RunRecord::new("sample", config);
    let matrix = read_matrix(matrix_path)?;
    let sets = sample(config, &matrix, &mut record)?;
    write_sets(dir, &sets, &mut record)?;
    write_config(dir, config, &mut record)?;
    record.finish(dir)
}

pub fn cmd_reconstruct(config: &ExperimentConfig) -> Result<RunRecord> {
    let dir = &config.output;
    prepare_dir(dir)?;
    let mut record = RunRecord::new("reconstruct", config);
    let matrix = forward(config, &mut record)?;
    let path = dir.join(MATRIX_FILE);
    write_matrix(&path, &matrix)?;
    record.output(path);
    let sets = sample(config, &matrix, &mut record)?;
    write_sets(dir, &sets, &mut record)?;
    write_config(dir, config, &mut record)?;
    record.finish(dir)
}

/// `G^sc(x^k, z, p; R)` at the three decay targets for one fan radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub radius: f64,
    pub values: Vec<[f64; 4]>,
    /// Largest Euclidean norm over the targets.
    pub max_magnitude: f64,
}

pub fn decay_row(config: &ExperimentConfig, radius: f64) -> Result<DecayRow> {
    let surface: Arc<dyn Surface> = Arc::new(fan_surface(radius)?);
    let system = BoundarySystem::for_surface(surface, config.medium()?, &config.solver_settings(), None)?;
    let fields = auxiliary_scattered(&system, DECAY_SOURCE, vertical(), &DECAY_TARGETS)?;
    let values = fields.iter().map(|u| [u[0].re, u[0].im, u[1].re, u[1].im]).collect();
    let max_magnitude = fields.iter().map(|u| u.norm()).fold(0.0, f64::max);
    Ok(DecayRow {
        radius,
        values,
        max_magnitude,
    })
}

pub fn decay(config: &ExperimentConfig, record: &mut RunRecord) -> Result<Vec<DecayRow>> {
    config.validate()?;
    config
        .decay_radii
        .iter()
        .map(|&r| record.time(&format!("fan R={r}"), || decay_row(config, r)))
        .collect()
}

pub fn decay_csv(rows: &[DecayRow]) -> String {
    let mut s = String::from("radius");
    for k in 1..=DECAY_TARGETS.len() {
        s.push_str(&format!(",x{k}_u1_re,x{k}_u1_im,x{k}_u2_re,x{k}_u2_im"));
    }
    s.push_str(",max_magnitude\n");
    for row in rows {
        s.push_str(&row.radius.to_string());
        for v in row.values.iter().flatten() {
            s.push_str(&format!(",{v:e}"));
        }
        s.push_str(&format!(",{:e}\n", row.max_magnitude));
    }
    s
}

pub fn cmd_decay(config: &ExperimentConfig) -> Result<RunRecord> {
    let dir = &config.output;
    prepare_dir(dir)?;
    let mut record = RunRecord::new("decay", config);
    let rows = decay(config, &mut record)?;
    for row in &rows {
        record.diagnostic(format!("max_magnitude R={}", row.radius), row.max_magnitude);
    }
    let path = dir.join(DECAY_FILE);
    write_text(&path, &decay_csv(&rows))?;
    record.output(path);
    record.finish(dir)
}

/// Outcome of one validation check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Set when the check could not be evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    /// A check that errors out is recorded as failed with an infinite measurement.
    fn at_most(name: &str, measured: Result<f64>, threshold: f64) -> Self {
        match measured {
            Ok(m) => Self {
                name: name.into(),
                measured: m,
                threshold,
                passed: m <= threshold,
                error: None,
            },
            Err(e) => Self {
                name: name.into(),
                measured: f64::INFINITY,
                threshold,
                passed: false,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const PROJECTION_TOLERANCE: f64 = 1e-12;
pub const RESIDUAL_TOLERANCE: f64 = 1e-3;
pub const RECIPROCITY_TOLERANCE: f64 = 1e-5;
pub const UPRC_TOLERANCE: f64 = 1e-3;
pub const SYMMETRY_TOLERANCE: f64 = 1e-6;

/// Worst error of `M_p + M_s = I`, idempotence, mutual annihilation over
/// 200 frequencies spanning three shear wavenumbers either side of zero.
pub fn projection_identity_error(config: &ExperimentConfig) -> Result<f64> {
    let m = config.medium()?;
    let id = ComplexTensor2::identity();
    let mut worst = 0.0f64;
    for i in 0..200 {
        let xi = -3.0 * m.k_s + 6.0 * m.k_s * (i as f64 + 0.37) / 200.0;
        let (mp, ms) = projection_matrices(xi, &m)?;
        let scale = 1.0 + mp.norm() + ms.norm();
        for e in [
            (mp + ms - id).norm(),
            (mp * mp - mp).norm(),
            (ms * ms - ms).norm(),
            (mp * ms).norm(),
        ] {
            worst = worst.max(e / scale);
        }
    }
    Ok(worst)
}

fn random_pair(rng: &mut ChaCha8Rng) -> ComplexPair {
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    ComplexPair::new(c(), c())
}

/// Worst reciprocity error over `draws` random pairs of measurement points
/// and polarisations.
pub fn reciprocity_error(config: &ExperimentConfig, system: &BoundarySystem, draws: usize) -> Result<f64> {
    let line = config.line()?;
    if line.len() < 2 {
        return Err(HarnessError::Config("reciprocity needs two measurement points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let i = rng.gen_range(0..line.len());
        let j = (i + rng.gen_range(1..line.len())) % line.len();
        let (p, q) = (random_pair(&mut rng), random_pair(&mut rng));
        worst = worst.max(reciprocity_check(system, line.points()[i], line.points()[j], p, q)?);
    }
    Ok(worst)
}

/// Worst relative mismatch between direct evaluation and upward
/// continuation from a trace half a unit above the surface and the line.
pub fn uprc_error(config: &ExperimentConfig, system: &BoundarySystem, targets: usize) -> Result<f64> {
    let (_, f_plus) = config.surface()?.bounds();
    let b = config.line.b;
    let h = f_plus.max(b) + 0.5;
    let source = Point2::new(-0.7, b.min(f_plus + 0.5));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let solution = solve_point_source(system, source, random_pair(&mut rng))?;
    let (half, dx) = (200.0f64, 0.05f64);
    let n = (2.0 * half / dx).round() as usize + 1;
    let points: Vec<Point2> = (0..n).map(|k| Point2::new(-half + k as f64 * dx, h)).collect();
    let values = system.evaluation_matrix(&points)? * solution.density();
    let trace: Vec<ComplexPair> = (0..n)
        .map(|k| ComplexPair::new(values[2 * k], values[2 * k + 1]))
        .collect();
    let spectrum = AngularSpectrum::new(&trace, -half, dx, h, system.medium())?;
    let mut worst = 0.0f64;
    for _ in 0..targets {
        let target = Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(h + 0.1..h + 1.0));
        let got = spectrum.propagate(target)?.value;
        let want = evaluate_scattered(&solution, target)?;
        worst = worst.max((got - want).norm() / want.norm());
    }
    Ok(worst)
}

/// Mirror-symmetry defect of the field scattered by a flat surface from a
/// vertically polarised source on the symmetry axis.
pub fn flat_symmetry_error(config: &ExperimentConfig) -> Result<f64> {
    let base = config.surface()?.far_height();
    let surface: Arc<dyn Surface> = Arc::new(SurfaceProfile::flat(base)?);
    let b = config.line.b.max(base + 0.5);
    let refinement = Refinement {
        height: b,
        half_width: config.line.a.max(4.0),
    };
    let system = BoundarySystem::for_surface(surface, config.medium()?, &config.solver_settings(), Some(refinement))?;
    let solution = solve_point_source(&system, Point2::new(0.0, b), vertical())?;
    let mut worst = 0.0f64;
    for d in [0.5, 1.7, 4.0] {
        let l = evaluate_scattered(&solution, Point2::new(-d, b))?;
        let r = evaluate_scattered(&solution, Point2::new(d, b))?;
        // u1 odd, u2 even under x1 -> -x1.
        let e = (l[0] + r[0]).norm().max((l[1] - r[1]).norm()) / l.norm().max(r.norm());
        worst = worst.max(e);
    }
    Ok(worst)
}

pub fn validate(config: &ExperimentConfig, record: &mut RunRecord) -> Result<ValidationReport> {
    config.validate()?;
    let mut checks = vec![Check::at_most(
        "projection identities",
        projection_identity_error(config),
        PROJECTION_TOLERANCE,
    )];
    let system = record.time("assemble", || surface_system(config))?;
    record.diagnostic("condition_estimate", system.condition());
    let source = Point2::new(0.3, config.line.b);
    let residual = solve_point_source(&system, source, vertical())
        .and_then(|s| boundary_residual(&s))
        .map_err(HarnessError::from);
    checks.push(Check::at_most("boundary residual", residual, RESIDUAL_TOLERANCE));
    let rec = record.time("reciprocity", || reciprocity_error(config, &system, 10));
    checks.push(Check::at_most("reciprocity", rec, RECIPROCITY_TOLERANCE));
    let uprc = record.time("uprc", || uprc_error(config, &system, 10));
    checks.push(Check::at_most("uprc consistency", uprc, UPRC_TOLERANCE));
    let flat = record.time("flat surface", || flat_symmetry_error(config));
    checks.push(Check::at_most("flat surface symmetry", flat, SYMMETRY_TOLERANCE));
    Ok(ValidationReport { checks })
}

pub fn cmd_validate(config: &ExperimentConfig) -> Result<(RunRecord, ValidationReport)> {
    let dir = &config.output;
    prepare_dir(dir)?;
    let mut record = RunRecord::new("validate", config);
    let report = validate(config, &mut record)?;
    for c in &report.checks {
        record.diagnostic(c.name.clone(), c.measured);
    }
    let path: PathBuf = dir.join(VALIDATION_FILE);
    write_text(&path, &serde_json::to_string_pretty(&report)?)?;
    record.output(path);
    Ok((record.finish(dir)?, report))
}
