//! Kupradze fundamental tensor of the 2D Navier equation and its tractions.
//!
//! The tensor is written as `Gamma = alpha(r) I + beta(r) rhat rhat^T`, with
//! `rhat = (x - y) / r`. Both radial functions and their derivatives are
//! closed-form combinations of `H0`, `H1` at `k_s r` and `k_p r`. The
//! combination `P(r) = (k_s H1(k_s r) - k_p H1(k_p r)) / r` cancels two
//! `1/r^2` singularities, so for small `k_s r` it is summed from the
//! ascending series instead.

use core::f64::consts::{FRAC_1_PI, FRAC_2_PI};

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use super::medium::ElasticMedium;
use super::point::{Direction2, Point2};
use super::special::hankel1_pair;
use crate::{Error, Result};

pub type ComplexTensor2 = Matrix2<Complex64>;
pub type ComplexPair = Vector2<Complex64>;

const COINCIDENCE: f64 = 1e-14;
const SERIES_CUTOFF: f64 = 1.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Radial profile of the tensor at one distance.
#[derive(Debug, Clone, Copy)]
struct Radial {
    alpha: Complex64,
    beta: Complex64,
    d_alpha: Complex64,
    d_beta: Complex64,
}

/// Single- and double-layer kernels evaluated together.
#[derive(Debug, Clone, Copy)]
pub struct KernelPair {
    /// `Gamma(x, y)`.
    pub single: ComplexTensor2,
    /// `D(x, y) = [T_y Gamma(y, x)]^T`, the double-layer kernel.
    pub double: ComplexTensor2,
}

/// Medium-bound evaluator for the Kupradze tensor and its tractions.
#[derive(Debug, Clone, Copy)]
pub struct KupradzeKernel {
    medium: ElasticMedium,
    /// `i / (4 mu)`
    c_mu: Complex64,
    /// `i / (4 omega^2)`
    c_omega: Complex64,
    /// `ascending-series` coefficients `c_m = psi(m+1) + psi(m+2)`.
    psi_sums: [f64; SERIES_TERMS],
}

const SERIES_TERMS: usize = 16;

impl KupradzeKernel {
    pub fn new(medium: ElasticMedium) -> Self {
        let mut psi_sums = [0.0; SERIES_TERMS];
        let mut harmonic = 0.0;
        for (m, c) in psi_sums.iter_mut().enumerate() {
            let next = harmonic + 1.0 / (m as f64 + 1.0);
            *c = harmonic + next - 2.0 * EULER_GAMMA;
            harmonic = next;
        }
        Self {
            medium,
            c_mu: Complex64::new(0.0, 0.25 / medium.mu),
            c_omega: Complex64::new(0.0, 0.25 / (medium.omega * medium.omega)),
            psi_sums,
        }
    }

    pub fn medium(&self) -> &ElasticMedium {
        &self.medium
    }

    fn radial(&self, r: f64) -> Radial {
        let (ks, kp) = (self.medium.k_s, self.medium.k_p);
        let (h0s, h1s) = hankel1_pair(ks * r);
        let (h0p, h1p) = hankel1_pair(kp * r);
        let q = -ks * ks * h0s + kp * kp * h0p;
        let p = if ks * r < SERIES_CUTOFF {
            self.p_series(r)
        } else {
            (ks * h1s - kp * h1p) / r
        };
        let q2p = q + 2.0 * p;
        Radial {
            alpha: self.c_mu * h0s - self.c_omega * p,
            beta: self.c_omega * q2p,
            d_alpha: -self.c_mu * ks * h1s + self.c_omega * q2p / r,
            d_beta: self.c_omega * (ks * ks * ks * h1s - kp * kp * kp * h1p - 2.0 * q2p / r),
        }
    }

    /// `P(r)` from the ascending series of `J1`, `Y1`.
    fn p_series(&self, r: f64) -> Complex64 {
        let t = 0.25 * r * r;
        let sums = |k: f64| {
            let z = k * k * t;
            let (mut sj, mut sc) = (0.0, 0.0);
            let mut term = 1.0;
            for m in 0..SERIES_TERMS {
                sj += term;
                sc += self.psi_sums[m] * term;
                term *= -z / ((m as f64 + 1.0) * (m as f64 + 2.0));
            }
            (sj, sc)
        };
        let (ks, kp) = (self.medium.k_s, self.medium.k_p);
        let (sj_s, sc_s) = sums(ks);
        let (sj_p, sc_p) = sums(kp);
        let (hs, hp) = (0.5 * ks * ks, 0.5 * kp * kp);
        let re = hs * sj_s - hp * sj_p;
        let im = FRAC_2_PI * (hs * libm::log(0.5 * ks * r) * sj_s - hp * libm::log(0.5 * kp * r) * sj_p)
            - FRAC_1_PI * (hs * sc_s - hp * sc_p);
        Complex64::new(re, im)
    }

    fn check(x: Point2, y: Point2) -> Result<(f64, [f64; 2])> {
        let d = x - y;
        let r = d.norm();
        if !(r >= COINCIDENCE) {
            return Err(Error::CoincidentPoints { distance: r });
        }
        Ok((r, [d.x1 / r, d.x2 / r]))
    }

    /// `Gamma(x, y)`.
    pub fn tensor(&self, x: Point2, y: Point2) -> Result<ComplexTensor2> {
        let (r, rh) = Self::check(x, y)?;
        let rad = self.radial(r);
        Ok(tensor_from(&rad, rh))
    }

    /// Traction at `x` (normal `n`) of the columns `Gamma(., y) e_j`.
    pub fn traction(&self, x: Point2, n: Direction2, y: Point2) -> Result<ComplexTensor2> {
        let (r, rh) = Self::check(x, y)?;
        let rad = self.radial(r);
        Ok(self.traction_from(&rad, r, rh, [n.x1(), n.x2()]))
    }

    /// `Gamma(x, y)` and the double-layer kernel `D(x, y)` for a source
    /// point `y` with normal `n_y`, sharing one set of Hankel evaluations.
    pub fn pair(&self, x: Point2, y: Point2, n_y: Direction2) -> Result<KernelPair> {
        let (r, rh) = Self::check(x, y)?;
        let rad = self.radial(r);
        let single = tensor_from(&rad, rh);
        let e = self.traction_from(&rad, r, [-rh[0], -rh[1]], [n_y.x1(), n_y.x2()]);
        Ok(KernelPair {
            single,
            double: e.transpose(),
        })
    }

    fn traction_from(&self, rad: &Radial, r: f64, rh: [f64; 2], n: [f64; 2]) -> ComplexTensor2 {
        let mu = self.medium.mu;
        let lm = self.medium.lambda + mu;
        let rn = rh[0] * n[0] + rh[1] * n[1];
        let div = rad.d_alpha + rad.d_beta + rad.beta / r;
        let b_r = rad.beta / r;
        ComplexTensor2::from_fn(|i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            let dn = rad.d_alpha * (rn * delta)
                + rad.d_beta * (rn * rh[i] * rh[j])
                + b_r * (n[i] * rh[j] + n[j] * rh[i] - 2.0 * rh[i] * rh[j] * rn);
            mu * dn + lm * n[i] * rh[j] * div
        })
    }

    /// Strength `c` of the Cauchy part `c (n_i r_j - n_j r_i) / r^2` of the
    /// double-layer kernel, `r = y - x`.
    pub fn cauchy_strength(&self) -> f64 {
        let m = &self.medium;
        (m.lambda + m.mu) / (4.0 * core::f64::consts::PI * (m.lambda + 2.0 * m.mu))
    }
}

fn tensor_from(rad: &Radial, rh: [f64; 2]) -> ComplexTensor2 {
    ComplexTensor2::from_fn(|i, j| {
        let delta = if i == j { rad.alpha } else { Complex64::new(0.0, 0.0) };
        delta + rad.beta * (rh[i] * rh[j])
    })
}

/// Kupradze tensor `Gamma(x, y)` of the Navier equation.
pub fn kupradze_tensor(x: Point2, y: Point2, medium: &ElasticMedium) -> Result<ComplexTensor2> {
    KupradzeKernel::new(*medium).tensor(x, y)
}

/// Incident point-source field `Gamma(x, y) p`.
pub fn point_source(x: Point2, y: Point2, p: &ComplexPair, medium: &ElasticMedium) -> Result<ComplexPair> {
    Ok(kupradze_tensor(x, y, medium)? * p)
}

/// Traction `T w = mu dw/dn + (lambda + mu) n div w` for `grad_w[(i, k)] = d_k w_i`.
pub fn traction(grad_w: &ComplexTensor2, normal: Direction2, medium: &ElasticMedium) -> ComplexPair {
    let n = ComplexPair::new(normal.x1().into(), normal.x2().into());
    let div = grad_w[(0, 0)] + grad_w[(1, 1)];
    grad_w * n * Complex64::from(medium.mu) + n * (div * (medium.lambda + medium.mu))
}

/// Column `j` is the traction at `x` (normal `normal_x`) of `Gamma(., y) e_j`.
pub fn traction_kernel(x: Point2, normal_x: Direction2, y: Point2, medium: &ElasticMedium) -> Result<ComplexTensor2> {
    KupradzeKernel::new(*medium).traction(x, normal_x, y)
}

/// Double-layer kernel `[T_y Gamma(y, x)]^T` for a boundary point `y` with normal `n_y`.
pub fn double_layer_kernel(x: Point2, y: Point2, n_y: Direction2, medium: &ElasticMedium) -> Result<ComplexTensor2> {
    Ok(KupradzeKernel::new(*medium).pair(x, y, n_y)?.double)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn medium() -> ElasticMedium {
        ElasticMedium::new(9.0, 3.0, 1.0).unwrap()
    }

    #[test]
    fn series_and_closed_form_agree_at_cutoff() {
        let k = KupradzeKernel::new(medium());
        for &z in &[0.3, 0.6, 0.9, 1.0, 1.2] {
            let r = z / medium().k_s;
            let (_, h1s) = hankel1_pair(medium().k_s * r);
            let (_, h1p) = hankel1_pair(medium().k_p * r);
            let direct = (medium().k_s * h1s - medium().k_p * h1p) / r;
            let series = k.p_series(r);
            assert!((direct - series).norm() < 1e-13 * direct.norm().max(1.0), "z={z}");
        }
    }

    #[test]
    fn coincident_points_rejected() {
        let p = Point2::new(0.3, 0.4);
        assert!(matches!(
            kupradze_tensor(p, p, &medium()),
            Err(Error::CoincidentPoints { .. })
        ));
    }

    #[test]
    fn point_source_is_linear() {
        let (x, y) = (Point2::new(1.0, 0.5), Point2::new(-0.3, 0.2));
        let m = medium();
        let zero = point_source(x, y, &ComplexPair::zeros(), &m).unwrap();
        assert_eq!(zero, ComplexPair::zeros());
        let e1 = ComplexPair::new(1.0.into(), 0.0.into());
        let g = kupradze_tensor(x, y, &m).unwrap();
        assert_eq!(point_source(x, y, &e1, &m).unwrap(), g.column(0).into_owned());
        let p = ComplexPair::new(Complex64::new(0.2, 1.0), Complex64::new(-1.0, 0.5));
        let q = ComplexPair::new(Complex64::new(1.5, -0.1), Complex64::new(0.3, 0.0));
        let (a, b) = (Complex64::new(0.7, -0.2), Complex64::new(-1.1, 0.4));
        let lhs = point_source(x, y, &(p * a + q * b), &m).unwrap();
        let rhs = point_source(x, y, &p, &m).unwrap() * a + point_source(x, y, &q, &m).unwrap() * b;
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn traction_examples() {
        let m = medium();
        let zero = traction(&ComplexTensor2::zeros(), Direction2::UP, &m);
        assert_eq!(zero, ComplexPair::zeros());
        // w = (x2, 0)
        let mut g = ComplexTensor2::zeros();
        g[(0, 1)] = 1.0.into();
        let t = traction(&g, Direction2::UP, &m);
        assert_eq!(t, ComplexPair::new(3.0.into(), 0.0.into()));
        // w = (x1, x2)
        let t = traction(&ComplexTensor2::identity(), Direction2::new(1.0, 0.0).unwrap(), &m);
        assert_eq!(t, ComplexPair::new(27.0.into(), 0.0.into()));
    }

    #[test]
    fn double_layer_has_expected_cauchy_part() {
        let m = medium();
        let k = KupradzeKernel::new(m);
        let x = Point2::new(0.0, 0.0);
        let n = Direction2::UP;
        let c = k.cauchy_strength();
        for &s in &[1e-6, -1e-6] {
            let y = Point2::new(s, 0.0);
            let d = k.pair(x, y, n).unwrap().double * Complex64::from(s);
            // r = y - x = (s, 0): c (n_i r_j - n_j r_i) / r^2 times s
            assert!((d[(0, 1)] - (-c)).norm() < 1e-5);
            assert!((d[(1, 0)] - c).norm() < 1e-5);
            assert!(d[(0, 0)].norm() < 1e-4 && d[(1, 1)].norm() < 1e-4);
        }
    }
}
