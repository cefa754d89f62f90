//! Bundles of deformed algebras over a sampled base space.
//!
//! A covariant field assigns to every sample point of a base space a
//! deformed torus algebra (a fiber) and, for each named element, a
//! polynomial in every fiber. The base is given combinatorially: sample
//! points with coordinates and a symmetric weighted adjacency. The fibers
//! share one acting group ℝ²ⁿ but may differ in torus dimension and
//! deformation — boundary strata are typically classical.
//!
//! The checks in this module certify the structure numerically:
//!
//! * [`module_action`] / [`check_covariance`] / [`check_centrality`] — the
//!   algebra of scalar functions on the base acts fiberwise, commutes with
//!   the group action, and is central for the deformed product;
//! * [`quantized_norm_profile`] — certified norm brackets fiber by fiber,
//!   routing classical fibers to the sup norm;
//! * [`continuity_report`] — bracket-aware continuity statistics of the
//!   norm profile across base refinements: certified jumps over adjacency
//!   edges, and excess between coordinate-matched samples of nested grids;
//! * [`sup_axiom_check`] — the field-level norm bracket
//!   [max lower, max upper] over all fibers, with witnesses.

mod checks;
mod continuity;
mod error;
mod profile;
mod types;

pub use checks::{
    check_centrality, check_covariance, module_action, nondegeneracy_check, sup_axiom_check,
    ResidualReport, SupAxiomReport,
};
pub use continuity::{continuity_report, ContinuityReport, LevelStats};
pub use error::FieldError;
pub use profile::{quantized_norm_profile, ProfileParams};
pub use types::{
    BaseSample, CTFunction, CovariantFieldSpec, FiberNormProfile, FiberSpec, FiberedElement,
    Neighbor,
};
