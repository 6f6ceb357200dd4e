//! Fourier symbols of the upward radiation condition and the DtN map.
//!
//! Conventions: `u(x1) = (2 pi)^{-1/2} int u^(xi) e^{i x1 xi} dxi`, and
//! `gamma(k, xi) = sqrt(k^2 - xi^2)` on the branch with `Im >= 0`.

use num_complex::Complex64;

use super::kupradze::ComplexTensor2;
use super::medium::ElasticMedium;
use crate::{Error, Result};

/// Threshold on `|xi^2 + gamma_p gamma_s|` below which symbols are refused.
pub const RESONANCE_GUARD: f64 = 1e-12;

/// `sqrt(k^2 - xi^2)`, real for `|xi| <= k`, positive imaginary otherwise.
pub fn gamma(k: f64, xi: f64) -> Complex64 {
    let d = (k - xi.abs()) * (k + xi.abs());
    if d >= 0.0 {
        Complex64::new(libm::sqrt(d), 0.0)
    } else {
        Complex64::new(0.0, libm::sqrt(-d))
    }
}

struct Symbols {
    gp: Complex64,
    gs: Complex64,
    denom: Complex64,
}

fn symbols(xi: f64, medium: &ElasticMedium) -> Result<Symbols> {
    let gp = gamma(medium.k_p, xi);
    let gs = gamma(medium.k_s, xi);
    let denom = gp * gs + xi * xi;
    if denom.norm() < RESONANCE_GUARD {
        return Err(Error::NearResonance {
            xi,
            denominator: denom.norm(),
        });
    }
    Ok(Symbols { gp, gs, denom })
}

/// Compressional and shear projections `(M_p, M_s)`.
pub fn projection_matrices(xi: f64, medium: &ElasticMedium) -> Result<(ComplexTensor2, ComplexTensor2)> {
    let Symbols { gp, gs, denom } = symbols(xi, medium)?;
    let inv = denom.inv();
    let x2 = Complex64::from(xi * xi);
    let mp = ComplexTensor2::new(x2, gs * xi, gp * xi, gp * gs) * inv;
    let ms = ComplexTensor2::new(gp * gs, -gs * xi, -gp * xi, x2) * inv;
    Ok((mp, ms))
}

/// Symbol `M(xi)` of the Dirichlet-to-Neumann map on a horizontal line.
pub fn dtn_symbol(xi: f64, medium: &ElasticMedium) -> Result<ComplexTensor2> {
    let Symbols { gp, gs, denom } = symbols(xi, medium)?;
    let w2 = medium.omega * medium.omega;
    let off = denom * (xi * medium.mu) - xi * w2;
    let scale = Complex64::i() / denom;
    Ok(ComplexTensor2::new(gp * w2, off, -off, gs * w2) * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn medium() -> ElasticMedium {
        ElasticMedium::new(9.0, 3.0, 1.0).unwrap()
    }

    fn samples() -> [f64; 6] {
        let m = medium();
        [0.0, 0.1, m.k_p, 0.5, m.k_s, 2.0]
    }

    #[test]
    fn projections_are_complementary_idempotents() {
        let m = medium();
        for xi in samples().into_iter().flat_map(|x| [x, -x]) {
            let (mp, ms) = projection_matrices(xi, &m).unwrap();
            let id = ComplexTensor2::identity();
            assert!((mp + ms - id).norm() < 1e-12, "xi={xi}");
            assert!((mp * mp - mp).norm() < 1e-12);
            assert!((ms * ms - ms).norm() < 1e-12);
            assert!((mp * ms).norm() < 1e-12);
        }
    }

    #[test]
    fn projections_at_normal_incidence() {
        let (mp, ms) = projection_matrices(0.0, &medium()).unwrap();
        let e = |a: f64, b: f64, c: f64, d: f64| ComplexTensor2::new(a.into(), b.into(), c.into(), d.into());
        assert!((mp - e(0.0, 0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!((ms - e(1.0, 0.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn branch_has_nonnegative_imaginary_part() {
        let m = medium();
        for i in -400..=400 {
            let xi = i as f64 * 0.01;
            assert!(gamma(m.k_p, xi).im >= 0.0 && gamma(m.k_s, xi).im >= 0.0);
        }
    }

    #[test]
    fn dtn_symbol_symmetries() {
        let m = medium();
        for xi in samples() {
            let a = dtn_symbol(xi, &m).unwrap();
            let b = dtn_symbol(-xi, &m).unwrap();
            assert!((b.transpose() - a).norm() <= 1e-13 * a.norm());
            assert!((a[(0, 0)] - b[(0, 0)]).norm() <= 1e-15 && (a[(1, 1)] - b[(1, 1)]).norm() <= 1e-15);
        }
    }

    #[test]
    fn dtn_symbol_at_zero() {
        let m = medium();
        let got = dtn_symbol(0.0, &m).unwrap();
        let (gp, gs) = (m.k_p, m.k_s);
        let w2 = m.omega * m.omega;
        let d = gp * gs;
        assert!((got[(0, 0)] - Complex64::new(0.0, w2 * gp / d)).norm() < 1e-14);
        assert!((got[(1, 1)] - Complex64::new(0.0, w2 * gs / d)).norm() < 1e-14);
        assert!(got[(0, 1)].norm() < 1e-15 && got[(1, 0)].norm() < 1e-15);
    }
}
