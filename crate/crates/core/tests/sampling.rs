use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roughscat_core::elastic::{ComplexPair, ElasticMedium, Point2};
use roughscat_core::geometry::{measurement_line, SamplingGrid};
use roughscat_core::linalg::{CMatrix, CVector};
use roughscat_core::sampling::{
    add_noise, assemble_rhs, extract_surface, indicator, tikhonov_solve, IndicatorField, NearFieldMatrix, Provenance,
    SamplingMode, TikhonovSolver,
};
use roughscat_core::Error;
use roughscat_testkit::dense::{spectral_norm, tikhonov_normal_equations};

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn row_major(m: &CMatrix) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push(m[(i, j)]);
        }
    }
    out
}

fn near_field(seed: u64, n: usize) -> NearFieldMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let line = measurement_line(10.0, 1.0, n).unwrap();
    let provenance = Provenance {
        surface: "synthetic".into(),
        nodes_per_wavelength: 10.0,
        panel_order: 16,
        eta: 1.0,
        seed: None,
        mode: SamplingMode::IncidentOnly,
    };
    let medium = ElasticMedium::new(9.0, 3.0, 1.0).unwrap();
    NearFieldMatrix::new(random_matrix(&mut rng, 2 * n, 2 * n), line, medium, 0.0, provenance).unwrap()
}

#[test]
fn svd_filter_matches_normal_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = rng.gen_range(8..=64);
        let a = random_matrix(&mut rng, n, n);
        let b = CVector::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let alpha = 10f64.powf(rng.gen_range(-4.0..0.0));
        let g = tikhonov_solve(&a, &b, alpha).unwrap();
        let want = tikhonov_normal_equations(&row_major(&a), n, n, b.as_slice(), alpha).unwrap();
        let diff: f64 = g.iter().zip(&want).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        let scale: f64 = want.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(diff / scale);
    }
    assert!(worst <= 1e-8, "worst relative difference {worst:e}");
}

#[test]
fn solution_norm_decreases_with_alpha() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = random_matrix(&mut rng, 30, 30);
    let b = CVector::from_fn(30, |i, _| Complex64::new(1.0 / (1.0 + i as f64), 0.5));
    let solver = TikhonovSolver::new(&a).unwrap();
    let norms: Vec<f64> = (-8..=2)
        .map(|e| solver.solve(&b, 10f64.powi(e)).unwrap().norm())
        .collect();
    assert!(norms.windows(2).all(|w| w[1] < w[0]), "{norms:?}");
}

#[test]
fn identity_closed_form() {
    let b = CVector::from_fn(12, |i, _| Complex64::new(i as f64 - 3.0, 0.25 * i as f64));
    for alpha in [1e-3, 0.5, 7.0] {
        let g = tikhonov_solve(&CMatrix::identity(12, 12), &b, alpha).unwrap();
        let want = &b / Complex64::from(1.0 + alpha);
        assert!((g - want).norm() <= 1e-14 * b.norm());
    }
}

#[test]
fn noise_has_prescribed_relative_spectral_norm() {
    for (seed, delta) in [(1u64, 0.02), (2, 0.05), (3, 0.3)] {
        let clean = near_field(seed, 6);
        let noisy = add_noise(&clean, delta, seed + 100).unwrap();
        let diff = noisy.entries() - clean.entries();
        let (r, c) = diff.shape();
        let ratio = spectral_norm(&row_major(&diff), r, c) / spectral_norm(&row_major(clean.entries()), r, c);
        assert!(
            (ratio - delta).abs() <= 1e-12 * delta.max(1.0),
            "delta {delta}: {ratio}"
        );
        assert_eq!(noisy.noise_level(), delta);
        assert_eq!(noisy.provenance().seed, Some(seed + 100));
    }
}

#[test]
fn noise_is_seeded() {
    let clean = near_field(9, 5);
    let a = add_noise(&clean, 0.05, 42).unwrap();
    let b = add_noise(&clean, 0.05, 42).unwrap();
    let c = add_noise(&clean, 0.05, 43).unwrap();
    assert_eq!(a.entries(), b.entries());
    assert_ne!(a.entries(), c.entries());
    assert_eq!(add_noise(&clean, 0.0, 1).unwrap().entries(), clean.entries());
    assert!(add_noise(&clean, -0.1, 1).is_err());
}

#[test]
fn rhs_requires_sampling_point_below_line() {
    let line = measurement_line(10.0, 1.0, 11).unwrap();
    let m = ElasticMedium::new(9.0, 3.0, 1.0).unwrap();
    let p = ComplexPair::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let r = assemble_rhs(Point2::new(0.0, 1.0), p, &line, &m, None);
    assert!(matches!(r, Err(Error::SampleAboveLine { .. })));
    let r = assemble_rhs(Point2::new(0.0, 0.5), p, &line, &m, None).unwrap();
    assert_eq!(r.entries.len(), 22);
}

#[test]
fn surface_extraction_on_synthetic_field() {
    let grid = SamplingGrid::new((-1.0, 1.0), (0.1, 1.0), 0.5, 0.1).unwrap();
    // Indicator 1 below x2 = 0.55, decaying above.
    let raw: Vec<f64> = grid
        .points()
        .iter()
        .map(|p| if p.x2 <= 0.55 { 1.0 } else { 0.1 })
        .collect();
    let field = IndicatorField::from_raw(grid.clone(), raw, 1e-3, 0.0).unwrap();
    let surface = extract_surface(&field, 0.5).unwrap();
    assert_eq!(surface.len(), grid.columns());
    for (_, h) in surface {
        // Crossing interpolated between rows 0.5 and 0.6.
        assert!((h - (0.5 + 0.1 * 0.5 / 0.9)).abs() < 1e-12, "{h}");
    }
    assert!(extract_surface(&field, 1.0).is_err());
}

#[test]
fn indicator_rejects_zero_vector() {
    assert!(matches!(indicator(&CVector::zeros(4)), Err(Error::ZeroVector)));
    let g = CVector::from_element(4, Complex64::new(0.0, 0.5));
    assert_eq!(indicator(&g).unwrap(), 1.0);
}

proptest! {
    #[test]
    fn filter_factors_bounded(alpha in 1e-6f64..10.0, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let solver = TikhonovSolver::new(&random_matrix(&mut rng, 10, 10)).unwrap();
        // sigma / (alpha + sigma^2) <= 1 / (2 sqrt(alpha))
        let bound = 0.5 / alpha.sqrt();
        for f in solver.filter(alpha) {
            prop_assert!(f > 0.0 && f <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn normalized_indicator_peaks_at_one(values in prop::collection::vec(1e-6f64..1e6, 6)) {
        let grid = SamplingGrid::new((-1.0, 1.0), (0.1, 0.2), 1.0, 0.1).unwrap();
        let field = IndicatorField::from_raw(grid, values, 1e-3, 0.0).unwrap();
        let max = field.normalized.iter().copied().fold(0.0, f64::max);
        prop_assert_eq!(max, 1.0);
        prop_assert!(field.normalized.iter().all(|&v| v > 0.0 && v <= 1.0));
    }
}
