//! Error type for algebra-layer operations.

use thiserror::Error;

/// Errors raised while constructing or combining algebra objects.
#[derive(Debug, Error)]
pub enum AlgebraError {
    /// A lattice key's length does not match the torus dimension.
    #[error("lattice index has length {found}, expected torus dimension {expected}")]
    IndexDimension { expected: usize, found: usize },

    /// Two operands live on tori of different dimension.
    #[error("operands have mismatched torus dimensions {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A vector argument does not match the acting group's dimension.
    #[error("group vector has length {found}, expected group dimension {expected}")]
    GroupDimension { expected: usize, found: usize },

    /// A matrix argument has the wrong shape.
    #[error("matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    /// A matrix required to be skew-symmetric is not, within tolerance.
    #[error("matrix is not skew-symmetric: max |A + Aᵀ| entry is {deviation:.3e}")]
    NotSkew { deviation: f64 },

    /// A skew form must have even dimension to be invertible.
    #[error("skew form has odd dimension {dim}; an invertible skew form needs even dimension")]
    OddDimension { dim: usize },

    /// A normalized skew form must have |det| = 1.
    #[error("skew form has |det| = {determinant:.12e}, expected 1 within {tolerance:.1e}")]
    NotUnitDeterminant { determinant: f64, tolerance: f64 },

    /// A matrix that must be invertible is singular.
    #[error("matrix is numerically singular and cannot be inverted")]
    SingularMatrix,

    /// A numeric argument is out of its valid range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A value that must be finite is NaN or infinite.
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    /// The damping-ladder extrapolation did not settle on a consistent limit.
    #[error(
        "phase calibration failed for frequency pair {pair}: best winding residual \
         {residual:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    CalibrationFit {
        pair: String,
        residual: f64,
        tolerance: f64,
    },

    /// Calibration requires a nondegenerate pairing between the two inputs.
    #[error("frequency pair {pair} has zero symplectic pairing; it carries no phase information")]
    DegeneratePairing { pair: String },

    /// A sampled weight is identically zero or has vanishing integral.
    #[error("sampled weight has vanishing integral ({integral:.3e}); cannot normalize")]
    VanishingWeight { integral: f64 },
}
