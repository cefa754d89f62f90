//! Errors raised while assembling scenario fields.

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::field::FieldError;

/// Failure modes of the scenario builders.
#[derive(Debug, Error)]
pub enum ScenarioError {
    /// An underlying algebra operation failed.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    /// Assembling the covariant field failed.
    #[error(transparent)]
    Field(#[from] FieldError),

    /// A restriction point lies outside the closed unit disk.
    #[error("restriction point has modulus {modulus:.6}, outside the closed unit disk")]
    OutsideDisk {
        /// Modulus of the offending point.
        modulus: f64,
    },

    /// A builder argument is out of range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// What went wrong.
        reason: String,
    },
}
