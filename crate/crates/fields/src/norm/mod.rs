//! Certified two-sided estimates of deformed operator norms.
//!
//! The deformed algebra acts on ℓ²(ℤᵈ) by the twisted left regular
//! representation, and the C*-norm ‖f‖ is the operator norm of that action.
//! Nothing here computes ‖f‖ "approximately" in an uncontrolled sense —
//! every routine returns a bound with a definite direction, and
//! [`norm_bracket`] packages a lower and an upper bound together:
//!
//! * **lower** — the largest singular value of the finite section of the
//!   representation on a lattice box; any section compresses the operator,
//!   so this is always ≤ ‖f‖. Small sections use dense SVD; large ones a
//!   bidiagonalization iteration whose final value is a Rayleigh quotient
//!   ‖Av‖/‖v‖ and therefore still a true lower bound regardless of
//!   convergence.
//! * **upper** — C*-identity powering: ‖f‖ = ‖f*#f‖^{1/2} and repeated
//!   squaring give ‖f‖ ≤ (ℓ¹((f*#f)^{2^j}))^{1/2^{j+1}} for every j, since
//!   the coefficient ℓ¹ norm dominates the operator norm. The reported
//!   bound is the minimum over a configured number of squarings.
//! * **exact fibers** — at rational rotation parameters the planar algebra
//!   has finite-dimensional clock-and-shift representations; sweeping their
//!   circle parameters with a Lipschitz certificate gives brackets of width
//!   O(1/grid) around the exact norm ([`exact_rational_norm`]).
//! * **sup norm** — classical fibers (vanishing cocycle) reduce to the
//!   supremum of |f| on the torus, bracketed by a grid maximum plus a
//!   Lipschitz certificate ([`sup_norm`]).

mod bounds;
mod bracket;
mod error;
mod lanczos;
mod rational;
mod rep;

pub use bounds::{norm_bracket, norm_lower, norm_lower_detailed, norm_upper, sup_norm,
    LowerEstimate, DENSE_SVD_CUTOFF};
pub use bracket::NormBracket;
pub use error::NormError;
pub use lanczos::{largest_singular_value, ComplexOperator, SvdEstimate};
pub use rational::exact_rational_norm;
pub use rep::{rep_matrix, SectionOperator};
