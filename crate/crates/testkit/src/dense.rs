//! Row-major complex Gaussian elimination with partial pivoting.

use num_complex::Complex64;

/// Solves `a x = b` for square row-major `a` of size `n`. `None` on an
/// exactly zero pivot.
pub fn gauss_solve(mut a: Vec<Complex64>, mut b: Vec<Complex64>, n: usize) -> Option<Vec<Complex64>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))?;
        if a[pivot * n + col].norm() == 0.0 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            b.swap(pivot, col);
        }
        let d = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / d;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = a[col * n + k];
                a[row * n + k] -= factor * v;
            }
            let v = b[col];
            b[row] -= factor * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row * n + k] * x[k];
        }
        x[row] = s / a[row * n + row];
    }
    Some(x)
}

/// Minimiser of `alpha |g|^2 + |A g - rhs|^2` from the normal equations
/// `(alpha I + A^H A) g = A^H rhs`; `a` is `rows x cols` row-major.
pub fn tikhonov_normal_equations(
    a: &[Complex64],
    rows: usize,
    cols: usize,
    rhs: &[Complex64],
    alpha: f64,
) -> Option<Vec<Complex64>> {
    assert_eq!(a.len(), rows * cols);
    let mut normal = vec![Complex64::new(0.0, 0.0); cols * cols];
    let mut projected = vec![Complex64::new(0.0, 0.0); cols];
    for i in 0..cols {
        for j in 0..cols {
            normal[i * cols + j] = (0..rows).map(|k| a[k * cols + i].conj() * a[k * cols + j]).sum();
        }
        normal[i * cols + i] += alpha;
        projected[i] = (0..rows).map(|k| a[k * cols + i].conj() * rhs[k]).sum();
    }
    gauss_solve(normal, projected, cols)
}

/// Largest singular value of row-major `a` by power iteration on `A^H A`.
pub fn spectral_norm(a: &[Complex64], rows: usize, cols: usize) -> f64 {
    assert_eq!(a.len(), rows * cols);
    let mut v: Vec<Complex64> = (0..cols).map(|k| Complex64::new(1.0 + 0.1 * k as f64, 0.3)).collect();
    let mut estimate = 0.0f64;
    for _ in 0..100_000 {
        let av: Vec<Complex64> = (0..rows)
            .map(|i| (0..cols).map(|j| a[i * cols + j] * v[j]).sum())
            .collect();
        let w: Vec<Complex64> = (0..cols)
            .map(|j| (0..rows).map(|i| a[i * cols + j].conj() * av[i]).sum())
            .collect();
        let norm_v: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let norm_w = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let next = (av.iter().map(|z| z.norm_sqr()).sum::<f64>() / norm_v).sqrt();
        if norm_w == 0.0 {
            return 0.0;
        }
        v = w.into_iter().map(|z| z / norm_w).collect();
        if (next - estimate).abs() <= 1e-16 * next {
            return next;
        }
        estimate = next;
    }
    estimate
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_permuted_system() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let a = vec![c(0.0, 0.0), c(2.0, 1.0), c(1.0, 0.0), c(3.0, 0.0)];
        let x = gauss_solve(a, vec![c(1.0, 0.0), c(2.0, 0.0)], 2).unwrap();
        assert!((x[1] - c(1.0, 0.0) / c(2.0, 1.0)).norm() < 1e-15);
        assert!((x[0] + x[1] * 3.0 - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let a = vec![c(2.0), c(0.0), c(0.0), c(0.0), c(-5.0), c(0.0)];
        assert!((spectral_norm(&a, 2, 3) - 5.0).abs() < 1e-14);
    }
}
