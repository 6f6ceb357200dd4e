use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roughscat_core::elastic::{AngularSpectrum, ComplexPair, ElasticMedium, Point2};
use roughscat_core::geometry::{measurement_line, Refinement, Surface, SurfaceProfile};
use roughscat_core::solver::{
    boundary_residual, evaluate_scattered, reciprocity_check, solve_point_source, BoundarySystem, SolverSettings,
};
use roughscat_core::Error;

fn medium() -> ElasticMedium {
    ElasticMedium::new(9.0, 3.0, 1.0).unwrap()
}

fn example1(npw: f64) -> BoundarySystem {
    let surface: Arc<dyn Surface> = Arc::new(SurfaceProfile::example(1).unwrap());
    let settings = SolverSettings {
        nodes_per_wavelength: npw,
        ..SolverSettings::default()
    };
    let refinement = Some(Refinement {
        height: 1.0,
        half_width: 10.0,
    });
    BoundarySystem::for_surface(surface, medium(), &settings, refinement).unwrap()
}

fn random_polarization(rng: &mut ChaCha8Rng) -> ComplexPair {
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    ComplexPair::new(c(), c())
}

#[test]
fn boundary_residual_converges_with_density() {
    let z = Point2::new(0.3, 1.0);
    let p = ComplexPair::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let coarse = boundary_residual(&solve_point_source(&example1(10.0), z, p).unwrap()).unwrap();
    let fine = boundary_residual(&solve_point_source(&example1(20.0), z, p).unwrap()).unwrap();
    assert!(coarse <= 1e-3, "default density residual {coarse:e}");
    assert!(fine <= 2.5e-4, "double density residual {fine:e}");
    assert!(fine <= coarse / 4.0, "order below two: {coarse:e} -> {fine:e}");
}

#[test]
fn too_coarse_mesh_fails_residual_bound() {
    let z = Point2::new(0.3, 1.0);
    let p = ComplexPair::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let r = boundary_residual(&solve_point_source(&example1(2.0), z, p).unwrap()).unwrap();
    assert!(r > 1e-3, "residual {r:e}");
}

#[test]
fn reciprocity_on_measurement_line() {
    let system = example1(10.0);
    let line = measurement_line(10.0, 1.0, 101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let i = rng.gen_range(0..line.len());
        let j = loop {
            let j = rng.gen_range(0..line.len());
            if j != i {
                break j;
            }
        };
        let (p, q) = (random_polarization(&mut rng), random_polarization(&mut rng));
        let e = reciprocity_check(&system, line.points()[i], line.points()[j], p, q).unwrap();
        worst = worst.max(e);
    }
    assert!(worst <= 1e-5, "worst reciprocity error {worst:e}");
}

#[test]
fn scattered_field_is_upward_propagating() {
    let system = example1(10.0);
    let z = Point2::new(-0.7, 1.0);
    let p = ComplexPair::new(Complex64::new(0.6, 0.2), Complex64::new(-0.3, 1.0));
    let solution = solve_point_source(&system, z, p).unwrap();
    let (half, dx, h): (f64, f64, f64) = (200.0, 0.05, 1.5);
    let n = (2.0 * half / dx).round() as usize + 1;
    let trace_points: Vec<Point2> = (0..n).map(|k| Point2::new(-half + k as f64 * dx, h)).collect();
    let e = system.evaluation_matrix(&trace_points).unwrap();
    let v = e * solution.density();
    let trace: Vec<ComplexPair> = (0..n).map(|k| ComplexPair::new(v[2 * k], v[2 * k + 1])).collect();
    let spectrum = AngularSpectrum::new(&trace, -half, dx, h, &medium()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let target = Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(1.6..2.5));
        let got = spectrum.propagate(target).unwrap().value;
        let want = evaluate_scattered(&solution, target).unwrap();
        worst = worst.max((got - want).norm() / want.norm());
    }
    assert!(worst <= 1e-3, "worst relative mismatch {worst:e}");
}

#[test]
fn targets_inside_obstacle_rejected() {
    let system = example1(10.0);
    assert!(matches!(
        system.check_target(Point2::new(0.0, 0.2)),
        Err(Error::BelowSurface { .. })
    ));
    let p = ComplexPair::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let s = solve_point_source(&system, Point2::new(0.0, 1.0), p).unwrap();
    assert!(s.linear_residual() <= 1e-10);
    assert_eq!(s.density().len(), system.dim());
}
