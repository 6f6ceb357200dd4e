//! `J0, J1, Y0, Y1` from their ascending series summed in binary fixed
//! point with enough guard bits to absorb the `e^x` cancellation.

use core::f64::consts::{LOG2_E, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const GUARD_BITS: usize = 96;

/// Exact `(m, e)` with `x = m 2^e`.
fn decompose(x: f64) -> (BigInt, i64) {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 {
        (BigInt::from(frac), -1074)
    } else {
        (BigInt::from(frac | (1u64 << 52)), exp - 1075)
    }
}

fn shift(v: BigInt, by: i64) -> BigInt {
    if by >= 0 {
        v << by as usize
    } else {
        v >> (-by) as usize
    }
}

fn to_f64(v: &BigInt, scale_bits: usize) -> f64 {
    // Keep ~110 significant bits before the lossy conversion.
    let keep = 110usize;
    if scale_bits > keep {
        let head = v >> (scale_bits - keep);
        head.to_f64().unwrap() * 2f64.powi(-(keep as i32))
    } else {
        v.to_f64().unwrap() * 2f64.powi(-(scale_bits as i32))
    }
}

/// Bessel functions of the first and second kind at `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValues {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl BesselValues {
    pub fn h0(&self) -> Complex64 {
        Complex64::new(self.j0, self.y0)
    }

    pub fn h1(&self) -> Complex64 {
        Complex64::new(self.j1, self.y1)
    }
}

/// Reference values at `x` in `(0, ~2000]`.
///
/// With `q = x^2 / 4` the four sums are
/// `A = sum (-q)^k / k!^2`, `B = sum (-q)^k / (k! (k+1)!)`,
/// `C = sum_{k>=1} (-q)^k H_k / k!^2` and
/// `D = sum (-q)^k (H_k + H_{k+1}) / (k! (k+1)!)`, giving
/// `J0 = A`, `J1 = x B / 2`, `Y0 = (2/pi)((ln(x/2) + gamma) J0 - C)` and
/// `Y1 = (2/pi)(ln(x/2) + gamma) J1 - 2/(pi x) - x D / (2 pi)`.
pub fn bessel_reference(x: f64) -> BesselValues {
    assert!(x > 0.0 && x.is_finite(), "argument must be positive");
    let p = (x * LOG2_E).ceil() as usize + GUARD_BITS;
    let (m, e) = decompose(x);
    let qm = &m * &m;
    let qe = 2 * e - 2;
    let one = BigInt::one() << p;

    let mut t_a = one.clone();
    let mut t_b = one.clone();
    let mut harmonic = BigInt::zero();
    let mut a = one.clone();
    let mut b = one.clone();
    let mut c = BigInt::zero();
    // k = 0 term of D has H_0 + H_1 = 1.
    let mut d = one.clone();
    let mut k: u64 = 0;
    loop {
        k += 1;
        t_a = shift(t_a * &qm, qe) / (k * k);
        t_b = shift(t_b * &qm, qe) / (k * (k + 1));
        let h_k = &harmonic + &one / k;
        let h_next = &h_k + &one / (k + 1);
        let c_term = (&t_a * &h_k) >> p;
        let d_term = (&t_b * (&h_k + &h_next)) >> p;
        if k % 2 == 1 {
            a -= &t_a;
            b -= &t_b;
            c -= c_term;
            d -= d_term;
        } else {
            a += &t_a;
            b += &t_b;
            c += c_term;
            d += d_term;
        }
        harmonic = h_k;
        if t_a.is_zero() && t_b.is_zero() {
            break;
        }
    }

    let (a, b, c, d) = (to_f64(&a, p), to_f64(&b, p), to_f64(&c, p), to_f64(&d, p));
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let j0 = a;
    let j1 = 0.5 * x * b;
    let y0 = 2.0 / PI * (log_term * j0 - c);
    let y1 = 2.0 / PI * log_term * j1 - 2.0 / (PI * x) - x * d / (2.0 * PI);
    BesselValues { j0, j1, y0, y1 }
}
