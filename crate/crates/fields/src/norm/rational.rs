//! Exact operator norms at rational rotation parameters.
//!
//! When the planar cocycle phase is β = π·p/q (mod 2π) with p/q in lowest
//! terms, the deformed 2-torus algebra is a bundle of q×q matrix algebras
//! over a classical 2-torus of circle parameters (u, v): the generators are
//! represented by u·Q and v·P with the clock Q = diag(ωʲ), the cyclic shift
//! P, and ω = exp(2iβ). A general lattice character maps to
//!
//! ```text
//!   V_k(u,v) = exp(−iβ·k₁k₂) · u^{k₁} v^{k₂} · Q^{k₁} P^{k₂},
//! ```
//!
//! which reproduces the structure constants exactly:
//! V_k V_l = exp(i·β(k₁l₂ − k₂l₁))·V_{k+l}. The norm of f is then the
//! supremum over (u, v) of the largest singular value of the q×q fiber
//! matrix — a finite-dimensional, certifiable quantity. Sweeping a uniform
//! grid gives a lower bound; a Lipschitz certificate in (u, v) turns the
//! sweep into a bracket of width O(1/grid).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;

use super::bracket::{params_from, NormBracket};
use super::error::NormError;
use crate::algebra::{PhaseCocycle, TrigPoly};
use crate::numeric::gcd;

/// Tolerance for matching the cocycle phase against π·p/q mod 2π.
const RATIONAL_TOL: f64 = 1e-9;

/// Largest supported fiber dimension q.
const MAX_DENOMINATOR: i64 = 64;

/// Certified bracket around the exact norm of f at the rational rotation
/// parameter p/q (phase β = π·p/q), by sweeping the q×q fiber matrices over
/// a grid×grid set of circle parameters with a Lipschitz certificate.
///
/// Fails if the cocycle's planar phase does not equal π·numer/denom mod 2π
/// within 1e-9, or if numer/denom is not in lowest terms.
pub fn exact_rational_norm(
    f: &TrigPoly,
    cocycle: &PhaseCocycle,
    numer: i64,
    denom: i64,
    grid: usize,
) -> Result<NormBracket, NormError> {
    if cocycle.torus_dim() != 2 {
        return Err(NormError::NotPlanar {
            dim: cocycle.torus_dim(),
        });
    }
    if f.dim() != 2 {
        return Err(NormError::NotPlanar { dim: f.dim() });
    }
    if denom < 1 {
        return Err(NormError::InvalidParameter {
            name: "denom",
            reason: format!("denominator must be positive, got {denom}"),
        });
    }
    if denom > MAX_DENOMINATOR {
        return Err(NormError::InvalidParameter {
            name: "denom",
            reason: format!("denominator {denom} exceeds the supported maximum {MAX_DENOMINATOR}"),
        });
    }
    if grid == 0 {
        return Err(NormError::InvalidParameter {
            name: "grid",
            reason: "grid resolution must be at least 1".into(),
        });
    }
    let reduced = if numer == 0 {
        denom == 1
    } else {
        gcd(numer.unsigned_abs(), denom as u64) == 1
    };
    if !reduced {
        return Err(NormError::NotReduced { numer, denom });
    }
    let beta_star = std::f64::consts::PI * numer as f64 / denom as f64;
    let beta = cocycle.planar_phase().expect("torus dimension checked");
    let turns = (beta - beta_star) / (2.0 * std::f64::consts::PI);
    let wrap_distance = (turns - turns.round()).abs() * 2.0 * std::f64::consts::PI;
    if wrap_distance > RATIONAL_TOL {
        return Err(NormError::NotRational {
            found: beta,
            numer,
            denom,
            tolerance: RATIONAL_TOL,
        });
    }

    let params = params_from(&[
        ("numer", Value::from(numer)),
        ("denom", Value::from(denom)),
        ("grid", Value::from(grid as u64)),
    ]);

    if f.is_zero() {
        return NormBracket::new(0.0, 0.0, "zero", "zero", params);
    }
    if f.term_count() == 1 {
        // A scaled character is a scaled unitary in every fiber: the norm is
        // exactly the coefficient modulus.
        let value = f.l1_norm();
        return NormBracket::new(
            value,
            value,
            "unitary-character",
            "unitary-character",
            params,
        );
    }

    let q = denom as usize;
    let tau = 2.0 * std::f64::consts::PI;
    // Per-term data: effective coefficient (with the exp(−iβk₁k₂)
    // compensator), lattice frequencies, and clock/shift exponents mod q.
    struct FiberTerm {
        coeff: Complex64,
        k1: i64,
        k2: i64,
        clock: usize,
        shift: usize,
    }
    let terms: Vec<FiberTerm> = f
        .iter()
        .map(|(k, c)| {
            let compensator = Complex64::cis(-beta_star * (k[0] * k[1]) as f64);
            FiberTerm {
                coeff: c * compensator,
                k1: k[0],
                k2: k[1],
                clock: k[0].rem_euclid(denom) as usize,
                shift: k[1].rem_euclid(denom) as usize,
            }
        })
        .collect();
    // ω^{i·a} table: ω = exp(2iβ*), powers needed up to i·a < q².
    let omega_pow: Vec<Complex64> = (0..q * q)
        .map(|e| Complex64::cis(2.0 * beta_star * e as f64))
        .collect();

    let grid_max = (0..grid)
        .into_par_iter()
        .map(|g1| {
            let mut matrix = DMatrix::<Complex64>::zeros(q, q);
            let mut row_best = 0.0f64;
            for g2 in 0..grid {
                matrix.fill(Complex64::ZERO);
                for t in &terms {
                    // u^{k₁} v^{k₂} on the grid point (g1/G, g2/G).
                    let angle = tau
                        * ((g1 as f64 * t.k1 as f64) + (g2 as f64 * t.k2 as f64))
                        / grid as f64;
                    let scalar = t.coeff * Complex64::cis(angle);
                    for i in 0..q {
                        let j = (i + q - t.shift % q) % q;
                        matrix[(i, j)] += scalar * omega_pow[i * t.clock];
                    }
                }
                let sigma = matrix.clone().singular_values()[0];
                if sigma > row_best {
                    row_best = sigma;
                }
            }
            row_best
        })
        .reduce(|| 0.0f64, f64::max);

    if !grid_max.is_finite() {
        return Err(NormError::NonFinite {
            context: "rational fiber sweep",
        });
    }
    let certificate = tau * f.weighted_l1_norm() / grid as f64;
    NormBracket::new(
        grid_max,
        grid_max + certificate,
        "clock-shift-grid",
        "clock-shift-grid+lipschitz",
        params,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CharacterAction, PhaseCocycle};
    use crate::norm::bounds::sup_norm;
    use nalgebra::DMatrix as RealMatrix;

    fn rotation_cocycle(theta: f64) -> PhaseCocycle {
        let b = std::f64::consts::PI * theta;
        PhaseCocycle::from_deformation_matrix(
            RealMatrix::from_row_slice(2, 2, &[0.0, b, -b, 0.0]),
            CharacterAction::identity(2),
        )
        .unwrap()
    }

    fn harper_element() -> TrigPoly {
        TrigPoly::from_terms(
            2,
            [
                (&[1, 0][..], Complex64::new(1.0, 0.0)),
                (&[-1, 0][..], Complex64::new(1.0, 0.0)),
                (&[0, 1][..], Complex64::new(1.0, 0.0)),
                (&[0, -1][..], Complex64::new(1.0, 0.0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn half_parameter_norm_is_two_root_two() {
        let bracket =
            exact_rational_norm(&harper_element(), &rotation_cocycle(0.5), 1, 2, 64).unwrap();
        let exact = 2.0 * 2.0f64.sqrt();
        assert!(
            (bracket.lower() - exact).abs() < 1e-9,
            "lower {} vs {exact}",
            bracket.lower()
        );
        assert!(bracket.upper() >= exact);
    }

    #[test]
    fn third_parameter_norm_is_one_plus_root_three() {
        let bracket =
            exact_rational_norm(&harper_element(), &rotation_cocycle(1.0 / 3.0), 1, 3, 60)
                .unwrap();
        let exact = 1.0 + 3.0f64.sqrt();
        assert!(
            (bracket.lower() - exact).abs() < 1e-9,
            "lower {} vs {exact}",
            bracket.lower()
        );
    }

    #[test]
    fn two_fifths_parameter_norm_is_golden() {
        let bracket =
            exact_rational_norm(&harper_element(), &rotation_cocycle(0.4), 2, 5, 60).unwrap();
        let exact = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!(
            (bracket.lower() - exact).abs() < 1e-9,
            "lower {} vs {exact}",
            bracket.lower()
        );
    }

    #[test]
    fn integer_parameter_reduces_to_the_classical_sup_norm() {
        // p/q = 0/1: fibers are 1×1 and the sweep is a plain grid maximum.
        let f = harper_element();
        let bracket = exact_rational_norm(&f, &rotation_cocycle(0.0), 0, 1, 32).unwrap();
        let sup = sup_norm(&f, 32).unwrap();
        assert!((bracket.lower() - sup.lower()).abs() < 1e-12);
    }

    #[test]
    fn single_character_is_exactly_unitary() {
        let f = TrigPoly::character(2, &[3, 1], Complex64::new(0.0, -2.0)).unwrap();
        let bracket = exact_rational_norm(&f, &rotation_cocycle(0.5), 1, 2, 8).unwrap();
        assert_eq!(bracket.lower(), 2.0);
        assert_eq!(bracket.upper(), 2.0);
        assert_eq!(bracket.lower_method(), "unitary-character");
    }

    #[test]
    fn mismatched_phase_is_rejected() {
        let err =
            exact_rational_norm(&harper_element(), &rotation_cocycle(0.3), 1, 2, 16).unwrap_err();
        assert!(matches!(err, NormError::NotRational { .. }));
    }

    #[test]
    fn unreduced_fraction_is_rejected() {
        let err =
            exact_rational_norm(&harper_element(), &rotation_cocycle(0.5), 2, 4, 16).unwrap_err();
        assert!(matches!(err, NormError::NotReduced { numer: 2, denom: 4 }));
    }

    #[test]
    fn bracket_contains_independent_section_lower_bound() {
        // The ℓ² section route and the fiber sweep bound the same number.
        let f = harper_element();
        let cocycle = rotation_cocycle(0.5);
        let fiber = exact_rational_norm(&f, &cocycle, 1, 2, 64).unwrap();
        let section = crate::norm::bounds::norm_lower(&f, &cocycle, 10).unwrap();
        assert!(section <= fiber.upper() + 1e-9);
        assert!(fiber.lower() <= section + 0.2, "section should be close");
    }
}
