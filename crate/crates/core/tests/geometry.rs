use std::sync::Arc;

use proptest::prelude::*;
use roughscat_core::elastic::ElasticMedium;
use roughscat_core::geometry::{
    discretize, fan_surface, measurement_line, sampling_grid, BoundaryMesh, MeshOptions, Refinement, Surface,
    SurfaceProfile,
};

fn medium() -> ElasticMedium {
    ElasticMedium::new(9.0, 3.0, 1.0).unwrap()
}

fn mesh_for(surface: Arc<dyn Surface>, refinement: Option<Refinement>) -> BoundaryMesh {
    let options = MeshOptions::for_surface(&*surface, &medium(), 10.0, refinement);
    discretize(surface, &options).unwrap()
}

fn example1_mesh() -> BoundaryMesh {
    let surface: Arc<dyn Surface> = Arc::new(SurfaceProfile::example(1).unwrap());
    mesh_for(
        surface,
        Some(Refinement {
            height: 1.0,
            half_width: 5.0,
        }),
    )
}

#[test]
fn normals_orthogonal_to_numerical_tangent() {
    for mesh in [example1_mesh(), mesh_for(Arc::new(fan_surface(50.0).unwrap()), None)] {
        let nodes = &mesh.rule().nodes;
        let mut worst = 0.0f64;
        for (q, panel) in mesh.panels().iter().enumerate() {
            for (k, &u) in nodes.iter().enumerate() {
                let h = 1e-5;
                let a = mesh.panel_point(q, u - h).point;
                let b = mesh.panel_point(q, u + h).point;
                let t = (b - a) * (1.0 / a.distance(b));
                let n = mesh.normals()[panel.first_node + k];
                worst = worst.max((n.x1() * t.x1 + n.x2() * t.x2).abs());
            }
        }
        assert!(worst <= 1e-8, "worst n.t = {worst:e}");
    }
}

#[test]
fn closed_boundary_integrates_normal_to_zero() {
    let mesh = example1_mesh();
    let (mut s1, mut s2, mut a1, mut a2) = (0.0, 0.0, 0.0, 0.0);
    for ((x, n), w) in mesh.nodes().iter().zip(mesh.normals()).zip(mesh.weights()) {
        s1 += n.x1() * w;
        s2 += n.x2() * w;
        a1 += x.x1 * n.x1() * w;
        a2 += x.x2 * n.x2() * w;
    }
    let perimeter: f64 = mesh.weights().iter().sum();
    assert!(
        s1.abs() <= 1e-10 * perimeter && s2.abs() <= 1e-10 * perimeter,
        "{s1:e} {s2:e}"
    );
    // Both flux forms give the enclosed area; outward normals make it positive.
    assert!(a1 > 0.0 && (a1 - a2).abs() <= 1e-9 * a1, "{a1} vs {a2}");
}

#[test]
fn graph_nodes_lie_on_the_profile() {
    let mesh = example1_mesh();
    let surface = mesh.surface().clone();
    for i in mesh.graph_nodes() {
        let x = mesh.nodes()[i];
        assert!((x.x2 - surface.height(x.x1)).abs() <= 1e-14);
    }
    let outside = roughscat_core::elastic::Point2::new(0.0, 1.5);
    assert!(mesh.is_outside(outside));
    assert!(!mesh.is_outside(roughscat_core::elastic::Point2::new(0.0, 0.0)));
}

#[test]
fn standard_line_and_grid() {
    let line = measurement_line(10.0, 1.0, 401).unwrap();
    assert_eq!(line.len(), 401);
    assert!((line.spacing() - 0.05).abs() < 1e-15);
    assert_eq!(line.points()[0].x1, -10.0);
    assert_eq!(line.points()[400].x1, 10.0);
    let grid = sampling_grid(None).unwrap();
    assert_eq!((grid.columns(), grid.rows()), (101, 10));
    assert!(grid.points().iter().all(|p| p.x2 > 0.0 && p.x2 <= 0.9 + 1e-12));
    assert!(measurement_line(10.0, 1.0, 1).is_err());
}

#[test]
fn example1_continuous_at_support_edge() {
    let p = SurfaceProfile::example(1).unwrap();
    for x in [4.0, -4.0] {
        assert_eq!(p.height(x), 0.5);
        assert!((p.height(x - x.signum() * 1e-3) - 0.5).abs() < 1e-12);
    }
}

#[test]
fn example2_second_differences_match_across_knots() {
    let p = SurfaceProfile::example(2).unwrap();
    let h = 1e-3;
    for knot in [-2.0, -1.0, 1.0, 2.0] {
        let left = (p.height(knot) - 2.0 * p.height(knot - h) + p.height(knot - 2.0 * h)) / (h * h);
        let right = (p.height(knot + 2.0 * h) - 2.0 * p.height(knot + h) + p.height(knot)) / (h * h);
        // One-sided second differences carry an O(h) third-derivative term.
        assert!((left - right).abs() <= 10.0 * h, "knot {knot}: {left} vs {right}");
        assert!((p.slope(knot - 1e-12) - p.slope(knot + 1e-12)).abs() <= 1e-9);
    }
}

proptest! {
    #[test]
    fn profiles_within_strict_bounds(id in 1u8..=4, x in -30.0f64..30.0) {
        let p = SurfaceProfile::example(id).unwrap();
        let (lo, hi) = p.bounds();
        let f = p.height(x);
        prop_assert!(lo < f && f < hi);
        if x.abs() >= p.flat_beyond() {
            prop_assert_eq!(f, 0.5);
        }
    }

    #[test]
    fn slopes_match_central_differences(id in 1u8..=4, x in -20.0f64..20.0) {
        let p = SurfaceProfile::example(id).unwrap();
        let h = 1e-5;
        let d = (p.height(x + h) - p.height(x - h)) / (2.0 * h);
        prop_assert!((d - p.slope(x)).abs() <= 1e-6, "x = {}: {} vs {}", x, d, p.slope(x));
    }

    #[test]
    fn blended_examples_exact_inside_and_flat_outside(x in -20.0f64..20.0) {
        let e3 = SurfaceProfile::example(3).unwrap();
        let e4 = SurfaceProfile::example(4).unwrap();
        if x.abs() <= 13.0 {
            prop_assert!((e3.height(x) - (0.5 + 0.15 * x.sin())).abs() <= 1e-15);
            prop_assert!((e4.height(x) - (0.5 + 0.18 * x.sin() + 0.15 * (0.5 * x).cos())).abs() <= 1e-15);
        }
        if x.abs() >= 15.0 {
            prop_assert_eq!(e3.height(x), 0.5);
            prop_assert_eq!(e4.height(x), 0.5);
        }
    }

    #[test]
    fn fan_is_plane_outside_chord(r in 2.0f64..1000.0, s in 1.0f64..3.0) {
        let fan = fan_surface(r).unwrap();
        let c = fan.chord_halfwidth();
        prop_assert_eq!(fan.height(c * s + 1e-9), 0.5);
        prop_assert_eq!(fan.height(-c * s - 1e-9), 0.5);
        prop_assert!(fan.height(0.0) < 0.5);
        prop_assert!((fan.height(c * (1.0 - 1e-12)) - 0.5).abs() <= 1e-6 * r.max(1.0));
    }
}
