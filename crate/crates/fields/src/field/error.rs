//! Error type for field-level operations.

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::norm::NormError;

/// Errors raised while building or checking covariant fields.
#[derive(Debug, Error)]
pub enum FieldError {
    /// An underlying algebra operation failed.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    /// A norm estimate failed.
    #[error(transparent)]
    Norm(#[from] NormError),

    /// The base must contain at least one sample.
    #[error("base space has no samples")]
    EmptyBase,

    /// Sample ids must be unique and non-empty.
    #[error("invalid sample id {id:?}: {reason}")]
    InvalidSampleId { id: String, reason: String },

    /// A sample's data is malformed.
    #[error("invalid sample {id:?}: {reason}")]
    InvalidSample { id: String, reason: String },

    /// An adjacency entry points to a missing sample.
    #[error("sample {id:?} lists unknown neighbor {neighbor:?}")]
    UnknownNeighbor { id: String, neighbor: String },

    /// Adjacency must be symmetric with matching distances.
    #[error("adjacency between {a:?} and {b:?} is not symmetric: {reason}")]
    AsymmetricAdjacency { a: String, b: String, reason: String },

    /// Fiber ids must match sample ids exactly.
    #[error("fiber ids do not match sample ids: {detail}")]
    FiberSetMismatch { detail: String },

    /// All fibers must share one acting group dimension.
    #[error("fiber {id:?} has group dimension {found}, expected {expected}")]
    GroupDimMismatch {
        id: String,
        expected: usize,
        found: usize,
    },

    /// An element must provide a polynomial for every sample.
    #[error("element {element:?} is incomplete: {detail}")]
    ElementIncomplete { element: String, detail: String },

    /// An element's fiber polynomial has the wrong torus dimension.
    #[error(
        "element {element:?} at sample {id:?} has torus dimension {found}, fiber expects \
         {expected}"
    )]
    ElementDimMismatch {
        element: String,
        id: String,
        expected: usize,
        found: usize,
    },

    /// A named element is missing from the field spec.
    #[error("unknown element {name:?}")]
    UnknownElement { name: String },

    /// Two fiberwise objects are indexed by different sample sets.
    #[error("sample id sets do not match: {detail}")]
    SampleSetMismatch { detail: String },

    /// A norm estimate failed at a specific fiber.
    #[error("norm estimation failed at fiber {id:?}")]
    FiberNorm {
        id: String,
        #[source]
        source: NormError,
    },

    /// Base grids passed as refinement levels do not nest.
    #[error("refinement level {level} does not contain level {level_minus_one}: {detail}")]
    RefinementMismatch {
        level: usize,
        level_minus_one: usize,
        detail: String,
    },

    /// A numeric argument is out of its valid range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}
