//! Ready-made covariant fields over concrete base spaces.
//!
//! Three constructions are provided:
//!
//! * [`build_rotation_family`] — a chain of 2-torus fibers indexed by a
//!   deformation angle θ, with lattice phase πθ·(k₁l₂ − k₂l₁); θ = 0 gives
//!   the commutative fiber.
//! * [`build_hbar_family`] — the semiclassical family J(ℏ) = J₀/ℏ of a
//!   fixed invertible skew form J₀, expressed through the deformation
//!   matrices B(ℏ) = ℏ·κ·J₀⁻¹; ℏ = 0 is the classical fiber.
//! * [`build_tsu2_disk`] — a disk of fibers obtained by restricting
//!   polynomial functions on S¹×SU(2) to the level sets of the upper-left
//!   matrix entry: interior points carry 2-torus fibers (deformed), the
//!   boundary circle carries commutative 1-torus fibers.

mod builders;
mod error;
mod su2;

pub use builders::{build_hbar_family, build_rotation_family, build_tsu2_disk};
pub use error::ScenarioError;
pub use su2::{restrict_su2, Su2Monomial, Su2Poly};
