//! Tikhonov regularisation through the singular system.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{CMatrix, CVector, Svd};
use crate::{Error, Result};

/// SVD of a data matrix, reused for every right-hand side.
#[derive(Debug, Clone)]
pub struct TikhonovSolver {
    svd: Svd,
    /// `U^H`, stored to make each solve two matrix-vector products.
    u_adjoint: CMatrix,
}

impl TikhonovSolver {
    pub fn new(matrix: &CMatrix) -> Result<Self> {
        let svd = Svd::new(matrix)?;
        let u_adjoint = svd.u.adjoint();
        Ok(Self { svd, u_adjoint })
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.svd.sigma
    }

    /// `g = sum_n sigma_n / (alpha + sigma_n^2) (u_n^H rhs) v_n`.
    pub fn solve(&self, rhs: &CVector, alpha: f64) -> Result<CVector> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter("alpha > 0 required"));
        }
        if rhs.len() != self.u_adjoint.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.u_adjoint.ncols(),
                found: rhs.len(),
            });
        }
        let mut c = &self.u_adjoint * rhs;
        for (ci, &s) in c.iter_mut().zip(&self.svd.sigma) {
            *ci *= Complex64::from(s / (alpha + s * s));
        }
        Ok(self.svd.v_adjoint.adjoint() * c)
    }

    /// Filter factors `sigma / (alpha + sigma^2)`.
    pub fn filter(&self, alpha: f64) -> Vec<f64> {
        self.svd.sigma.iter().map(|&s| s / (alpha + s * s)).collect()
    }
}

/// One-shot solve of `(alpha I + A^H A) g = A^H rhs`.
pub fn tikhonov_solve(matrix: &CMatrix, rhs: &CVector, alpha: f64) -> Result<CVector> {
    TikhonovSolver::new(matrix)?.solve(rhs, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_closed_form() {
        let a = CMatrix::identity(2, 2);
        let rhs = CVector::from_vec(alloc::vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let g = tikhonov_solve(&a, &rhs, 1.0).unwrap();
        assert!((g[0] - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        assert!(g[1].norm() < 1e-14);
    }

    #[test]
    fn small_alpha_inverts() {
        let a = CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(if i == j { 2.0 } else { 0.3 }, (i + 2 * j) as f64 * 0.1)
        });
        let x = CVector::from_fn(3, |i, _| Complex64::new(1.0 + i as f64, -0.5));
        let g = tikhonov_solve(&a, &(&a * &x), 1e-14).unwrap();
        assert!((g - x).norm() < 1e-10);
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        let s = TikhonovSolver::new(&CMatrix::identity(2, 2)).unwrap();
        assert!(s.solve(&CVector::zeros(2), 0.0).is_err());
    }
}
