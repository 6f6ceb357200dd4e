//! Hankel functions of the first kind, orders 0 and 1, for positive real argument.
//!
//! `J` and `Y` come from the `libm` ports of the FreeBSD rational
//! approximations; they hold ~1e-15 relative accuracy in `|H|` from 1e-8
//! up to large arguments, which neither a pure ascending series nor the
//! Hankel asymptotic expansion manages in double precision near x ~ 12.

use num_complex::Complex64;

use crate::{Error, Result};

/// `H^(1)_order(x)` for `order` in {0, 1} and `x > 0`.
pub fn hankel1(order: u8, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain { function: "hankel1", x });
    }
    match order {
        0 => Ok(Complex64::new(libm::j0(x), libm::y0(x))),
        1 => Ok(Complex64::new(libm::j1(x), libm::y1(x))),
        _ => Err(Error::InvalidParameter("hankel1 order must be 0 or 1")),
    }
}

/// `(H^(1)_0(x), H^(1)_1(x))` without argument checks; `x` must be positive.
#[inline]
pub fn hankel1_pair(x: f64) -> (Complex64, Complex64) {
    (
        Complex64::new(libm::j0(x), libm::y0(x)),
        Complex64::new(libm::j1(x), libm::y1(x)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn reference_values_at_one() {
        let h0 = hankel1(0, 1.0).unwrap();
        assert!((h0.re - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((h0.im - 0.088_256_964_215_676_96).abs() < 1e-15);
        let h1 = hankel1(1, 1.0).unwrap();
        assert!((h1.re - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((h1.im + 0.781_212_821_300_288_7).abs() < 1e-15);
    }

    #[test]
    fn small_argument_log_asymptotics() {
        for &x in &[1e-4, 1e-6, 1e-8] {
            let h = hankel1(0, x).unwrap();
            assert!((h.re - 1.0).abs() < 1e-7);
            // Y0(x) - (2/pi) ln x -> (2/pi)(gamma - ln 2)
            let c = 2.0 / PI * (0.577_215_664_901_532_9 - core::f64::consts::LN_2);
            assert!((h.im - 2.0 / PI * libm::log(x) - c).abs() < 1e-6);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(hankel1(0, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(hankel1(1, -1.0), Err(Error::Domain { .. })));
        assert!(hankel1(2, 1.0).is_err());
    }

    #[test]
    fn wronskian_cross_product() {
        let mut x = 0.1;
        while x <= 100.0 {
            let w = libm::j0(x) * libm::y1(x) - libm::j1(x) * libm::y0(x);
            assert!((w + 2.0 / (PI * x)).abs() <= 1e-12 * (2.0 / (PI * x)), "x={x}");
            x *= 1.07;
        }
    }
}
