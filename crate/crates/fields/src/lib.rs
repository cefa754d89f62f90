//! Strict deformation of torus function algebras, with certified numerics.
//!
//! The objects here are finite trigonometric polynomials on the d-torus 𝕋ᵈ,
//! acted on by ℝ²ⁿ through a frequency matrix. A skew bilinear form on ℝ²ⁿ
//! induces a deformed (twisted) product on these polynomials: on characters,
//!
//! ```text
//!   e_k # e_l = exp(i·freq(k)ᵀ B freq(l)) · e_{k+l},     B = κ·J⁻¹,
//! ```
//!
//! a phase 2-cocycle twisting the ordinary convolution of Fourier
//! coefficients. The constant κ = 2π² is pinned by an independent quadrature
//! oracle that integrates the defining oscillatory product directly
//! (see [`algebra::calibrate_phase_constant`]).
//!
//! On top of the algebra sit three layers:
//!
//! * [`norm`] — certified brackets `[lower, upper]` around the C*-norm of a
//!   deformed element: truncated-representation singular values from below,
//!   ℓ¹ power bounds from above, and exact clock/shift fiber norms at
//!   rational rotation parameters.
//! * [`field`] — bundles of deformed algebras over a sampled base space:
//!   pointwise module actions, covariance and centrality checks, fiberwise
//!   norm profiles, and bracket-aware continuity reports across refinements.
//! * [`scenario`] — ready-made families: a semiclassical ℏ-family, the
//!   rotation-algebra family over θ ∈ [0,1], and a disk-base family obtained
//!   by restricting polynomials on 𝕋 × S³ to translation orbits.
//!
//! All computations are deterministic: sparse coefficient maps iterate in
//! lattice order, iterative solvers use fixed seeds, and parallel reductions
//! merge in index order.

pub mod algebra;
pub mod field;
pub mod norm;
mod numeric;
pub mod scenario;

pub use algebra::{
    act, build_cocycle, calibrate_phase_constant, deformed_mul, deformed_mul_quadrature,
    derivative, integrated_action, pointwise_mul, seminorm_classical, AlgebraError,
    CharacterAction, PhaseCocycle, QuadratureParams, SampledWeight, SkewForm, TrigPoly,
    PHASE_CONSTANT,
};
pub use field::{
    check_centrality, check_covariance, continuity_report, module_action,
    quantized_norm_profile, sup_axiom_check, BaseSample, CTFunction, ContinuityReport,
    CovariantFieldSpec, FiberNormProfile, FiberSpec, FiberedElement, FieldError, Neighbor,
    ProfileParams,
};
pub use norm::{
    exact_rational_norm, norm_bracket, norm_lower, norm_upper, rep_matrix, sup_norm,
    NormBracket, NormError,
};
pub use scenario::{
    build_hbar_family, build_rotation_family, build_tsu2_disk, restrict_su2, ScenarioError,
    Su2Monomial, Su2Poly,
};
