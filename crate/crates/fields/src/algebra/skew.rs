//! Normalized invertible skew forms on the acting group ℝ²ⁿ.

use nalgebra::DMatrix;

use super::error::AlgebraError;

/// Relative tolerance for the skew-symmetry check.
const SKEW_TOL: f64 = 1e-12;

/// Tolerance for the |det J| = 1 normalization check.
const DET_TOL: f64 = 1e-9;

/// An invertible skew-symmetric form J on ℝ²ⁿ, normalized to |det J| = 1.
///
/// The normalization makes the oscillatory-product prefactor π^{−2n} cancel
/// exactly against the Gaussian-regularized pairing volume, so the deformed
/// product of characters has unit-modulus structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewForm {
    matrix: DMatrix<f64>,
}

impl SkewForm {
    /// Validates and wraps a skew form: square, even-dimensional,
    /// skew-symmetric within tolerance, |det| = 1 within tolerance.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self, AlgebraError> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(AlgebraError::MatrixShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected_rows: matrix.ncols().max(1),
                expected_cols: matrix.ncols().max(1),
            });
        }
        if matrix.nrows() % 2 != 0 {
            return Err(AlgebraError::OddDimension {
                dim: matrix.nrows(),
            });
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(AlgebraError::NonFinite {
                context: "skew form matrix",
            });
        }
        let scale = matrix.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let deviation = skew_deviation(&matrix);
        if deviation > SKEW_TOL * (1.0 + scale) {
            return Err(AlgebraError::NotSkew { deviation });
        }
        let det = matrix.clone().determinant();
        if (det.abs() - 1.0).abs() > DET_TOL {
            return Err(AlgebraError::NotUnitDeterminant {
                determinant: det.abs(),
                tolerance: DET_TOL,
            });
        }
        Ok(Self { matrix })
    }

    /// The standard block form ⊕ⁿ [[0,1],[−1,0]] on ℝ²ⁿ.
    pub fn standard(half_dim: usize) -> Self {
        let dim = 2 * half_dim.max(1);
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim / 2 {
            m[(2 * b, 2 * b + 1)] = 1.0;
            m[(2 * b + 1, 2 * b)] = -1.0;
        }
        Self { matrix: m }
    }

    /// Group dimension 2n.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// The underlying matrix J.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// The inverse form J⁻¹ (exists by the determinant normalization).
    pub fn inverse(&self) -> Result<DMatrix<f64>, AlgebraError> {
        self.matrix
            .clone()
            .try_inverse()
            .ok_or(AlgebraError::SingularMatrix)
    }
}

/// Largest entry of |A + Aᵀ|, the distance from skew-symmetry.
pub(crate) fn skew_deviation(matrix: &DMatrix<f64>) -> f64 {
    let sym = matrix + matrix.transpose();
    sym.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}
