//! Central finite differences with one Richardson step (error `O(h^4)`).

use num_complex::Complex64;

fn combine(coarse: Vec<Complex64>, fine: Vec<Complex64>) -> Vec<Complex64> {
    coarse.into_iter().zip(fine).map(|(c, f)| (f * 4.0 - c) / 3.0).collect()
}

fn central<F>(f: &F, x: [f64; 2], axis: usize, h: f64) -> Vec<Complex64>
where
    F: Fn([f64; 2]) -> Vec<Complex64>,
{
    let (mut plus, mut minus) = (x, x);
    plus[axis] += h;
    minus[axis] -= h;
    f(plus)
        .into_iter()
        .zip(f(minus))
        .map(|(p, m)| (p - m) / (2.0 * h))
        .collect()
}

/// `d f / d x_axis` of a vector-valued function of the plane.
pub fn partial<F>(f: &F, x: [f64; 2], axis: usize, h: f64) -> Vec<Complex64>
where
    F: Fn([f64; 2]) -> Vec<Complex64>,
{
    combine(central(f, x, axis, h), central(f, x, axis, 0.5 * h))
}

/// `d^2 f / (d x_i d x_j)` by nesting [`partial`].
pub fn second_partial<F>(f: &F, x: [f64; 2], i: usize, j: usize, h: f64) -> Vec<Complex64>
where
    F: Fn([f64; 2]) -> Vec<Complex64>,
{
    let inner = |y: [f64; 2]| partial(f, y, j, h);
    partial(&inner, x, i, h)
}

/// Derivative of a scalar function of one variable.
pub fn derivative<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (d(0.5 * h) * 4.0 - d(h)) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_mixed_partial() {
        let f = |x: [f64; 2]| vec![Complex64::new(x[0].powi(3) * x[1] * x[1], x[0] * x[1])];
        let d = second_partial(&f, [1.5, -0.5], 0, 1, 1e-2);
        assert!((d[0] - Complex64::new(3.0 * 2.25 * 2.0 * -0.5, 1.0)).norm() < 1e-9);
        let d = derivative(|t| Complex64::new(t.sin(), 0.0), 0.3, 1e-2);
        assert!((d.re - 0.3f64.cos()).abs() < 1e-10);
    }
}
