//! The phase 2-cocycle that twists coefficient convolution.
//!
//! For an action matrix M (d×2n), an invertible skew form J on ℝ²ⁿ, and the
//! phase constant κ, the deformed product of characters is
//!
//! ```text
//!   e_k # e_l = c(k,l)·e_{k+l},   c(k,l) = exp(i·kᵀE l),
//!   E = skew(M·B·Mᵀ),             B = κ·J⁻¹,
//! ```
//!
//! where skew(A) = (A − Aᵀ)/2. Only the skew part of M·B·Mᵀ enters the
//! product (the symmetric part cancels between (k,l) and (l,k) pairings up
//! to a coboundary), and taking it explicitly makes one-dimensional fibers
//! exactly classical: a 1×1 skew matrix is identically zero, so boundary
//! circles of a disk family multiply commutatively to the last bit.
//!
//! The constant κ = 2π² is not an input here — it is pinned by the
//! quadrature oracle in this crate (see `calibrate_phase_constant`), which
//! integrates the damped oscillatory pairing and extrapolates the damping
//! away.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::action::CharacterAction;
use super::error::AlgebraError;
use super::skew::{skew_deviation, SkewForm};

/// The calibrated phase constant κ = 2π² relating the skew form to the
/// character phase: e_k # e_l = exp(i·κ·freq(k)ᵀJ⁻¹freq(l))·e_{k+l}.
pub const PHASE_CONSTANT: f64 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;

/// Structure constants of a deformed torus algebra: the lattice phase matrix
/// E together with the action it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCocycle {
    action: CharacterAction,
    deformation: DMatrix<f64>,
    lattice_phase: DMatrix<f64>,
}

impl PhaseCocycle {
    /// Builds the cocycle from a group-level deformation matrix B (2n×2n,
    /// skew): the lattice phase is E = skew(M·B·Mᵀ).
    pub fn from_deformation_matrix(
        deformation: DMatrix<f64>,
        action: CharacterAction,
    ) -> Result<Self, AlgebraError> {
        let g = action.group_dim();
        if deformation.nrows() != g || deformation.ncols() != g {
            return Err(AlgebraError::MatrixShape {
                rows: deformation.nrows(),
                cols: deformation.ncols(),
                expected_rows: g,
                expected_cols: g,
            });
        }
        if deformation.iter().any(|x| !x.is_finite()) {
            return Err(AlgebraError::NonFinite {
                context: "deformation matrix",
            });
        }
        let scale = deformation.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let deviation = skew_deviation(&deformation);
        if deviation > 1e-12 * (1.0 + scale) {
            return Err(AlgebraError::NotSkew { deviation });
        }
        let pushed = action.matrix() * &deformation * action.matrix().transpose();
        let lattice_phase = skew_part(&pushed);
        Ok(Self {
            action,
            deformation,
            lattice_phase,
        })
    }

    /// The undeformed (commutative) cocycle: B = 0, so c(k,l) ≡ 1.
    pub fn classical(action: CharacterAction) -> Self {
        let g = action.group_dim();
        let d = action.torus_dim();
        Self {
            action,
            deformation: DMatrix::zeros(g, g),
            lattice_phase: DMatrix::zeros(d, d),
        }
    }

    /// The acting group's frequency matrix.
    pub fn action(&self) -> &CharacterAction {
        &self.action
    }

    /// The group-level deformation matrix B.
    pub fn deformation_matrix(&self) -> &DMatrix<f64> {
        &self.deformation
    }

    /// The lattice phase matrix E (d×d, skew).
    pub fn lattice_phase_matrix(&self) -> &DMatrix<f64> {
        &self.lattice_phase
    }

    /// Torus dimension d.
    pub fn torus_dim(&self) -> usize {
        self.action.torus_dim()
    }

    /// Acting group dimension 2n.
    pub fn group_dim(&self) -> usize {
        self.action.group_dim()
    }

    /// The phase angle kᵀE l of the structure constant c(k,l).
    ///
    /// Since E is exactly antisymmetric, the sum collapses to
    /// Σ_{i<j} E_ij·(k_i·l_j − k_j·l_i) with the lattice pairing computed in
    /// exact integer arithmetic — on 2-tori the phase is one correctly
    /// rounded multiplication, which keeps grouping-dependent rounding out
    /// of the algebra-law residuals.
    pub fn phase(&self, k: &[i64], l: &[i64]) -> Result<f64, AlgebraError> {
        let d = self.torus_dim();
        if k.len() != d {
            return Err(AlgebraError::IndexDimension {
                expected: d,
                found: k.len(),
            });
        }
        if l.len() != d {
            return Err(AlgebraError::IndexDimension {
                expected: d,
                found: l.len(),
            });
        }
        let mut acc = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                let pairing = k[i] * l[j] - k[j] * l[i];
                if pairing != 0 {
                    acc += self.lattice_phase[(i, j)] * pairing as f64;
                }
            }
        }
        Ok(acc)
    }

    /// The unit-modulus structure constant c(k,l) = exp(i·kᵀE l).
    pub fn value(&self, k: &[i64], l: &[i64]) -> Result<Complex64, AlgebraError> {
        Ok(Complex64::cis(self.phase(k, l)?))
    }

    /// True when the lattice phase matrix vanishes identically, so the
    /// deformed product coincides bit for bit with the pointwise product.
    pub fn is_classical(&self) -> bool {
        self.lattice_phase.iter().all(|x| *x == 0.0)
    }

    /// For 2-tori, the single independent phase entry E₀₁ (the rotation
    /// angle of the algebra, in radians per unit lattice pairing).
    pub fn planar_phase(&self) -> Option<f64> {
        if self.torus_dim() == 2 {
            Some(self.lattice_phase[(0, 1)])
        } else {
            None
        }
    }
}

/// Builds the cocycle of the deformation along J with phase constant κ:
/// B = κ·J⁻¹ pushed through the action.
pub fn build_cocycle(
    form: &SkewForm,
    action: &CharacterAction,
    kappa: f64,
) -> Result<PhaseCocycle, AlgebraError> {
    if !kappa.is_finite() {
        return Err(AlgebraError::NonFinite {
            context: "phase constant",
        });
    }
    if form.dim() != action.group_dim() {
        return Err(AlgebraError::MatrixShape {
            rows: form.dim(),
            cols: form.dim(),
            expected_rows: action.group_dim(),
            expected_cols: action.group_dim(),
        });
    }
    let b = form.inverse()? * kappa;
    PhaseCocycle::from_deformation_matrix(b, action.clone())
}

/// The skew part (A − Aᵀ)/2 of a square matrix.
fn skew_part(matrix: &DMatrix<f64>) -> DMatrix<f64> {
    (matrix - matrix.transpose()) * 0.5
}
