//! Error type for norm estimation.

use thiserror::Error;

use crate::algebra::AlgebraError;

/// Errors raised while estimating operator norms.
#[derive(Debug, Error)]
pub enum NormError {
    /// An underlying algebra operation failed.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    /// A bracket with lower > upper (beyond rounding slack) was requested.
    #[error("invalid bracket: lower {lower} exceeds upper {upper}")]
    InvalidBracket { lower: f64, upper: f64 },

    /// A numeric argument is out of its valid range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The truncation box would produce an unmanageable section dimension.
    #[error("section dimension {dim} exceeds the limit {limit}")]
    SectionTooLarge { dim: usize, limit: usize },

    /// Powering blew the support past the configured cap.
    #[error(
        "power bound aborted: support reached {count} terms after {doublings} squarings, \
         cap is {cap}"
    )]
    SupportCapExceeded {
        count: usize,
        cap: usize,
        doublings: usize,
    },

    /// A computation produced a non-finite value.
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    /// The requested rotation parameter is not the rational number claimed.
    #[error(
        "cocycle phase {found:.12} is not π·{numer}/{denom} (mod 2π) within {tolerance:.1e}"
    )]
    NotRational {
        found: f64,
        numer: i64,
        denom: i64,
        tolerance: f64,
    },

    /// The rational parameter must be in lowest terms.
    #[error("rational parameter {numer}/{denom} is not in lowest terms")]
    NotReduced { numer: i64, denom: i64 },

    /// Exact fiber norms require a planar (2-torus) algebra.
    #[error("exact rational norms require torus dimension 2, got {dim}")]
    NotPlanar { dim: usize },
}
