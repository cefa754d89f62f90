//! Deformed multiplication on trigonometric polynomials.
//!
//! The base object is a finite Fourier sum f = Σ_k c_k e_k on 𝕋ᵈ, with
//! e_k(σ) = exp(2πi k·σ). An ℝ²ⁿ-action enters through a d×2n frequency
//! matrix M: the group element X translates phases by freq(k)·X where
//! freq(k) = Mᵀk. Given an invertible skew form J on ℝ²ⁿ and the phase
//! constant κ, the deformed product twists coefficient convolution:
//!
//! ```text
//!   e_k # e_l = exp(i·kᵀE l)·e_{k+l},   E = skew(M·(κJ⁻¹)·Mᵀ).
//! ```
//!
//! Two independent routes compute this product:
//!
//! * [`deformed_mul`] — the closed-form cocycle above, exact up to float
//!   rounding, used everywhere in production;
//! * [`deformed_mul_quadrature`] — direct numerical integration of the
//!   damped oscillatory pairing that defines the product, used as an oracle
//!   to validate the closed form and to pin the constant κ from scratch via
//!   [`calibrate_phase_constant`].
//!
//! The remaining pieces are the classical calculus the deformation rides on:
//! translation action, iterated derivations, the weighted derivative
//! seminorm, involution, and integration of the action against a compactly
//! supported weight function ([`integrated_action`]).

mod action;
mod calculus;
mod cocycle;
mod error;
mod poly;
mod product;
mod quadrature;
mod skew;
mod weight;

pub use action::{act, CharacterAction};
pub use calculus::{derivative, multi_indices, seminorm_classical};
pub use cocycle::{build_cocycle, PhaseCocycle, PHASE_CONSTANT};
pub use error::AlgebraError;
pub use poly::TrigPoly;
pub use product::{deformed_mul, pointwise_mul};
pub use quadrature::{
    calibrate_phase_constant, deformed_mul_quadrature, CalibrationPair, PhaseCalibration,
    QuadratureParams, DAMPING_LADDER,
};
pub use skew::SkewForm;
pub use weight::{integrated_action, SampledWeight};
