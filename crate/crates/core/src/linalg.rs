//! Dense complex linear algebra: an LU solve handle with a 1-norm condition
//! estimate, and singular value decompositions. Matrices are nalgebra
//! types; with `std` the LU factorisation runs on faer.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, Dyn, LU, SVD};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Reciprocal condition numbers below this are treated as singular.
pub const SINGULAR_RCOND: f64 = 1e-14;

/// Factorised square matrix. Solving borrows immutably, so one handle can
/// serve concurrent solves.
#[derive(Debug, Clone)]
pub struct LuSolver {
    factor: Factor,
    n: usize,
    condition: f64,
}

#[derive(Debug, Clone)]
enum Factor {
    #[cfg_attr(feature = "std", allow(dead_code))]
    Nalgebra(LU<Complex64, Dyn, Dyn>),
    #[cfg(feature = "std")]
    Faer(faer::linalg::solvers::PartialPivLu<Complex64>),
}

impl Factor {
    #[cfg(feature = "std")]
    fn new(matrix: CMatrix) -> Option<Self> {
        use faer::linalg::solvers::Solve;
        let n = matrix.nrows();
        let m = faer::Mat::<Complex64>::from_fn(n, n, |i, j| matrix[(i, j)]);
        let lu = m.partial_piv_lu();
        // Partial pivoting never fails; an exactly zero pivot shows as a
        // non-finite solve.
        let probe = lu.solve(faer::Mat::<Complex64>::from_fn(n, 1, |_, _| Complex64::new(1.0, 0.0)));
        let finite = (0..n).all(|i| probe[(i, 0)].re.is_finite() && probe[(i, 0)].im.is_finite());
        finite.then_some(Factor::Faer(lu))
    }

    #[cfg(not(feature = "std"))]
    fn new(matrix: CMatrix) -> Option<Self> {
        let lu = matrix.lu();
        lu.is_invertible().then_some(Factor::Nalgebra(lu))
    }

    fn solve(&self, rhs: &CMatrix) -> CMatrix {
        match self {
            Factor::Nalgebra(lu) => lu.solve(rhs).expect("invertible factors"),
            #[cfg(feature = "std")]
            Factor::Faer(lu) => {
                use faer::linalg::solvers::Solve;
                let b = faer::Mat::<Complex64>::from_fn(rhs.nrows(), rhs.ncols(), |i, j| rhs[(i, j)]);
                let x = lu.solve(b);
                CMatrix::from_fn(rhs.nrows(), rhs.ncols(), |i, j| x[(i, j)])
            }
        }
    }

    fn solve_adjoint(&self, rhs: &CVector) -> CVector {
        match self {
            // A = P^T L U, so A^H y = b  <=>  U^H L^H (P y) = b.
            Factor::Nalgebra(lu) => {
                let w = lu.u().ad_solve_upper_triangular(rhs).expect("nonsingular U");
                let mut v = lu.l().ad_solve_lower_triangular(&w).expect("unit L");
                lu.p().inv_permute_rows(&mut v);
                v
            }
            #[cfg(feature = "std")]
            Factor::Faer(lu) => {
                use faer::linalg::solvers::Solve;
                let b = faer::Mat::<Complex64>::from_fn(rhs.len(), 1, |i, _| rhs[i]);
                let x = lu.solve_adjoint(b);
                CVector::from_fn(rhs.len(), |i, _| x[(i, 0)])
            }
        }
    }
}

impl LuSolver {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter("matrix has non-finite entries"));
        }
        let norm1 = one_norm(&matrix);
        let n = matrix.nrows();
        let factor = Factor::new(matrix).ok_or(Error::SingularMatrix {
            condition: f64::INFINITY,
        })?;
        let inverse_norm = estimate_inverse_one_norm(&factor, n);
        let condition = norm1 * inverse_norm;
        if !(condition.is_finite() && 1.0 / condition > SINGULAR_RCOND) {
            return Err(Error::SingularMatrix { condition });
        }
        Ok(Self { factor, n, condition })
    }

    /// 1-norm condition estimate `||A||_1 est(||A^-1||_1)`.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if rhs.nrows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.nrows(),
            });
        }
        Ok(self.factor.solve(rhs))
    }

    pub fn solve_vector(&self, rhs: &CVector) -> Result<CVector> {
        if rhs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.len(),
            });
        }
        let m = CMatrix::from_column_slice(rhs.len(), 1, rhs.as_slice());
        Ok(CVector::from_column_slice(self.factor.solve(&m).as_slice()))
    }
}

fn one_norm(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Hager-Higham estimate of `||A^-1||_1` from the LU factors.
fn estimate_inverse_one_norm(factor: &Factor, n: usize) -> f64 {
    let solve = |x: &CVector| {
        let m = CMatrix::from_column_slice(n, 1, x.as_slice());
        CVector::from_column_slice(factor.solve(&m).as_slice())
    };
    let solve_adjoint = |b: &CVector| factor.solve_adjoint(b);
    let l1 = |v: &CVector| v.iter().map(|z| z.norm()).sum::<f64>();
    let mut x = CVector::from_element(n, Complex64::new(1.0 / n as f64, 0.0));
    let mut estimate = 0.0;
    let mut last_j = usize::MAX;
    for _ in 0..5 {
        let y = solve(&x);
        let est = l1(&y);
        if est <= estimate && last_j != usize::MAX {
            break;
        }
        estimate = est;
        let xi = y.map(|z| {
            if z.norm() > 0.0 {
                z / z.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        });
        let z = solve_adjoint(&xi);
        let (j, zmax) = z
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        let zx = z.iter().zip(x.iter()).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        if zmax <= zx || j == last_j {
            break;
        }
        last_j = j;
        x.fill(Complex64::new(0.0, 0.0));
        x[j] = Complex64::new(1.0, 0.0);
    }
    let alt = CVector::from_fn(n, |i, _| {
        let s = if i % 2 == 0 { 1.0 } else { -1.0 };
        let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
        Complex64::new(s * (1.0 + i as f64 / denom), 0.0)
    });
    let alt_est = 2.0 * l1(&solve(&alt)) / (3.0 * n as f64);
    estimate.max(alt_est)
}

/// Thin SVD `A = U diag(sigma) V^H`, singular values in decreasing order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v_adjoint: CMatrix,
}

impl Svd {
    pub fn new(matrix: &CMatrix) -> Result<Self> {
        if matrix.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::DecompositionFailed);
        }
        let svd = SVD::try_new(matrix.clone(), true, true, f64::EPSILON, 0).ok_or(Error::DecompositionFailed)?;
        let u = svd.u.ok_or(Error::DecompositionFailed)?;
        let v_adjoint = svd.v_t.ok_or(Error::DecompositionFailed)?;
        Ok(Self {
            u,
            sigma: svd.singular_values.iter().copied().collect(),
            v_adjoint,
        })
    }
}

/// Largest singular value.
pub fn spectral_norm(matrix: &CMatrix) -> Result<f64> {
    if matrix.is_empty() {
        return Ok(0.0);
    }
    if matrix.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::DecompositionFailed);
    }
    let s = SVD::try_new(matrix.clone(), false, false, f64::EPSILON, 0).ok_or(Error::DecompositionFailed)?;
    Ok(s.singular_values.iter().copied().fold(0.0, f64::max))
}
