use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roughscat_core::elastic::{
    hankel1, kupradze_tensor, point_source, traction_kernel, ComplexPair, Direction2, ElasticMedium, Point2,
};
use roughscat_testkit::diff::{partial, second_partial};

fn medium() -> ElasticMedium {
    ElasticMedium::new(9.0, 3.0, 1.0).unwrap()
}

fn column(x: [f64; 2], y: Point2, j: usize) -> Vec<Complex64> {
    let g = kupradze_tensor(Point2::new(x[0], x[1]), y, &medium()).unwrap();
    vec![g[(0, j)], g[(1, j)]]
}

fn random_pair(rng: &mut ChaCha8Rng) -> (Point2, Point2) {
    loop {
        let x = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let y = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        if x.distance(y) >= 1.0 {
            return (x, y);
        }
    }
}

#[test]
fn navier_residual_by_finite_differences() {
    let m = medium();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-2;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (x, y) = random_pair(&mut rng);
        for j in 0..2 {
            let f = |p: [f64; 2]| column(p, y, j);
            let at = [x.x1, x.x2];
            let d = |a: usize, b: usize| second_partial(&f, at, a, b, h);
            let (d00, d01, d11) = (d(0, 0), d(0, 1), d(1, 1));
            let u = f(at);
            let mut res = [Complex64::new(0.0, 0.0); 2];
            for i in 0..2 {
                let lap = d00[i] + d11[i];
                // (grad div u)_i = d_i (d_0 u_0 + d_1 u_1)
                let grad_div = if i == 0 { d00[0] + d01[1] } else { d01[0] + d11[1] };
                res[i] = lap * m.mu + grad_div * (m.lambda + m.mu) + u[i] * (m.omega * m.omega);
            }
            let rel = (res[0].norm() + res[1].norm()) / (u[0].norm() + u[1].norm());
            worst = worst.max(rel);
        }
    }
    assert!(worst <= 1e-4, "worst residual {worst:e}");
}

#[test]
fn closed_form_matches_nested_difference_hessian() {
    let m = medium();
    let y = Point2::new(0.0, 0.0);
    let x = [1.0, 1.0];
    let phi = |p: [f64; 2]| {
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        vec![hankel1(0, m.k_s * r).unwrap() - hankel1(0, m.k_p * r).unwrap()]
    };
    let r = 2f64.sqrt();
    let diag = Complex64::i() / (4.0 * m.mu) * hankel1(0, m.k_s * r).unwrap();
    let g = kupradze_tensor(Point2::new(x[0], x[1]), y, &m).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            let hess = second_partial(&phi, x, a, b, 1e-3)[0];
            let mut want = Complex64::i() / (4.0 * m.omega * m.omega) * hess;
            if a == b {
                want += diag;
            }
            assert!(
                (g[(a, b)] - want).norm() <= 1e-6,
                "entry ({a},{b}): {} vs {want}",
                g[(a, b)]
            );
        }
    }
}

#[test]
fn traction_kernel_matches_difference_traction() {
    let m = medium();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (x, y) = random_pair(&mut rng);
        let angle: f64 = rng.gen_range(0.0..core::f64::consts::TAU);
        let n = Direction2::new(angle.cos(), angle.sin()).unwrap();
        let t = traction_kernel(x, n, y, &m).unwrap();
        for j in 0..2 {
            let f = |p: [f64; 2]| column(p, y, j);
            let at = [x.x1, x.x2];
            let (d0, d1) = (partial(&f, at, 0, 1e-3), partial(&f, at, 1, 1e-3));
            let div = d0[0] + d1[1];
            let nv = [n.x1(), n.x2()];
            for i in 0..2 {
                let dn = d0[i] * nv[0] + d1[i] * nv[1];
                let want = dn * m.mu + div * ((m.lambda + m.mu) * nv[i]);
                assert!((t[(i, j)] - want).norm() <= 1e-6, "({i},{j}): {} vs {want}", t[(i, j)]);
            }
        }
    }
}

#[test]
fn traction_decays_along_ray() {
    let m = medium();
    let n = Direction2::new(0.6, 0.8).unwrap();
    let y = Point2::new(0.0, 0.0);
    let envelope: Vec<f64> = [100.0, 200.0, 400.0]
        .iter()
        .map(|&r| {
            // Peak over one shear wavelength to smooth the oscillation.
            (0..32)
                .map(|k| {
                    let s = r + k as f64 * m.shear_wavelength() / 32.0;
                    traction_kernel(Point2::new(0.6 * s, 0.8 * s), n, y, &m).unwrap().norm()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    assert!(envelope[0] > envelope[1] && envelope[1] > envelope[2], "{envelope:?}");
}

#[test]
fn coincident_points_rejected() {
    let p = Point2::new(0.3, 0.4);
    assert!(kupradze_tensor(p, p, &medium()).is_err());
}

fn point() -> impl Strategy<Value = Point2> {
    (-20.0f64..20.0, -20.0f64..20.0).prop_map(|(a, b)| Point2::new(a, b))
}

fn pair() -> impl Strategy<Value = ComplexPair> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_map(|(a, b, c, d)| ComplexPair::new(Complex64::new(a, b), Complex64::new(c, d)))
}

proptest! {
    #[test]
    fn tensor_symmetric_in_both_senses(x in point(), y in point()) {
        prop_assume!(x.distance(y) > 1e-3);
        let m = medium();
        let g = kupradze_tensor(x, y, &m).unwrap();
        let gt = kupradze_tensor(y, x, &m).unwrap();
        let scale = g.norm();
        prop_assert!((g - gt).norm() <= 1e-13 * scale);
        prop_assert!((g - g.transpose()).norm() <= 1e-13 * scale);
    }

    #[test]
    fn point_source_linear(x in point(), y in point(), p in pair(), q in pair(), a in -2.0f64..2.0) {
        prop_assume!(x.distance(y) > 1e-3);
        let m = medium();
        let c = Complex64::new(a, 0.5);
        let lhs = point_source(x, y, &(p * c + q), &m).unwrap();
        let rhs = point_source(x, y, &p, &m).unwrap() * c + point_source(x, y, &q, &m).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-14 * (1.0 + lhs.norm()) * 10.0);
    }
}
