//! The ℝ²ⁿ-action on torus polynomials by character translation.
//!
//! A d×2n real matrix M defines an action of ℝ²ⁿ on 𝕋ᵈ by σ ↦ σ + MX (mod
//! ℤᵈ). On characters this is diagonal: e_k picks up the phase
//! exp(2πi·freq(k)·X) with frequency vector freq(k) = Mᵀk ∈ ℝ²ⁿ. The same
//! matrix fixes which directions the deformation and the derivations see.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::error::AlgebraError;
use super::poly::TrigPoly;

/// Frequency matrix of an ℝ²ⁿ-action on 𝕋ᵈ (d rows, 2n columns).
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterAction {
    matrix: DMatrix<f64>,
}

impl CharacterAction {
    /// Wraps a d×2n frequency matrix. Both dimensions must be positive and
    /// all entries finite.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self, AlgebraError> {
        if matrix.nrows() == 0 || matrix.ncols() == 0 {
            return Err(AlgebraError::MatrixShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected_rows: 1,
                expected_cols: 1,
            });
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(AlgebraError::NonFinite {
                context: "action frequency matrix",
            });
        }
        Ok(Self { matrix })
    }

    /// The tautological action of ℝᵈ on 𝕋ᵈ (M = identity).
    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    /// Torus dimension d (rows of M).
    pub fn torus_dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Acting group dimension 2n (columns of M).
    pub fn group_dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// The frequency matrix M.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Frequency vector freq(k) = Mᵀk of the character e_k.
    pub fn frequency(&self, k: &[i64]) -> Result<DVector<f64>, AlgebraError> {
        if k.len() != self.torus_dim() {
            return Err(AlgebraError::IndexDimension {
                expected: self.torus_dim(),
                found: k.len(),
            });
        }
        let kv = DVector::from_iterator(k.len(), k.iter().map(|x| *x as f64));
        Ok(self.matrix.transpose() * kv)
    }
}

/// Translates f by the group element X: coefficients pick up the phases
/// c_k ↦ exp(2πi·freq(k)·X)·c_k. This is a *-automorphism for every X.
pub fn act(f: &TrigPoly, action: &CharacterAction, x: &[f64]) -> Result<TrigPoly, AlgebraError> {
    if f.dim() != action.torus_dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: f.dim(),
            right: action.torus_dim(),
        });
    }
    if x.len() != action.group_dim() {
        return Err(AlgebraError::GroupDimension {
            expected: action.group_dim(),
            found: x.len(),
        });
    }
    let mut out = TrigPoly::zero(f.dim());
    for (k, c) in f.iter() {
        let freq = action.frequency(k)?;
        let dot: f64 = freq.iter().zip(x).map(|(a, b)| a * b).sum();
        let phase = Complex64::cis(2.0 * std::f64::consts::PI * dot);
        out.add_term(k, c * phase)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_action_frequency_is_the_lattice_point() {
        let action = CharacterAction::identity(3);
        let freq = action.frequency(&[2, -1, 5]).unwrap();
        assert_eq!(freq.as_slice(), &[2.0, -1.0, 5.0]);
    }

    #[test]
    fn rectangular_action_maps_lattice_to_group_frequencies() {
        // M is 1x2: a line winding into the 2-dimensional group.
        let action =
            CharacterAction::new(DMatrix::from_row_slice(1, 2, &[1.0, -0.5])).unwrap();
        assert_eq!(action.torus_dim(), 1);
        assert_eq!(action.group_dim(), 2);
        let freq = action.frequency(&[4]).unwrap();
        assert_eq!(freq.as_slice(), &[4.0, -2.0]);
    }

    #[test]
    fn act_translates_characters_by_the_expected_phase() {
        // Identity action on 𝕋², X = (1/4, 0): e_(1,0) gains e^{iπ/2} = i.
        let f = TrigPoly::character(2, &[1, 0], c(1.0, 0.0)).unwrap();
        let g = act(&f, &CharacterAction::identity(2), &[0.25, 0.0]).unwrap();
        assert!((g.coeff(&[1, 0]) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn act_is_a_homomorphism_in_the_group_variable() {
        let action =
            CharacterAction::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.3, -0.2, 1.0]))
                .unwrap();
        let f = TrigPoly::from_terms(
            2,
            [
                (&[1, 0][..], c(0.7, -0.1)),
                (&[0, 2][..], c(-0.4, 0.9)),
            ],
        )
        .unwrap();
        let x = [0.31, -0.77];
        let y = [-0.12, 0.45];
        let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let sequential = act(&act(&f, &action, &x).unwrap(), &action, &y).unwrap();
        let combined = act(&f, &action, &xy).unwrap();
        assert!(sequential.max_coeff_distance(&combined).unwrap() < 1e-14);
    }

    #[test]
    fn act_rejects_wrong_group_vector_length() {
        let f = TrigPoly::constant(2, c(1.0, 0.0));
        let err = act(&f, &CharacterAction::identity(2), &[0.1]).unwrap_err();
        assert!(matches!(err, AlgebraError::GroupDimension { .. }));
    }
}
