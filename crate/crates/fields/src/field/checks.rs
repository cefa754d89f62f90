//! Structural checks on covariant fields.
//!
//! A covariant field is a family of deformed torus algebras indexed by base
//! samples, together with elements assigning one polynomial per fiber.
//! Scalar functions of the base act fiberwise by multiplication, and that
//! action must be
//!
//!   * *central*: φ·(f # g) = (φ·f) # g = f # (φ·g) in every fiber,
//!   * *covariant*: it commutes with the character action of the group,
//!   * *nondegenerate*: the constant 1 acts as the identity and indicators
//!     cut out single fibers exactly.
//!
//! Each check reports the worst coefficientwise residual per fiber, so a
//! failure names the sample where the structure breaks.

use std::collections::BTreeMap;

use serde::Serialize;

use super::error::FieldError;
use super::types::{CTFunction, CovariantFieldSpec, FiberNormProfile, FiberedElement};
use crate::algebra::{act, deformed_mul, TrigPoly};

/// Worst-case residuals of a fiberwise identity check.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    /// Largest residual over all fibers.
    pub max_residual: f64,
    /// Residual per sample id.
    pub per_fiber: BTreeMap<String, f64>,
    /// Tolerance the residuals were compared against.
    pub tolerance: f64,
    /// True when `max_residual <= tolerance`.
    pub passed: bool,
}

impl ResidualReport {
    fn from_per_fiber(per_fiber: BTreeMap<String, f64>, tolerance: f64) -> Self {
        let max_residual = per_fiber.values().copied().fold(0.0f64, f64::max);
        Self {
            max_residual,
            per_fiber,
            tolerance,
            passed: max_residual <= tolerance,
        }
    }
}

/// Consistency summary of a fiberwise norm profile against the rule that
/// the field norm is the supremum of the fiber norms.
#[derive(Debug, Clone, Serialize)]
pub struct SupAxiomReport {
    /// Largest certified lower bound over the fibers.
    pub sup_lower: f64,
    /// Largest certified upper bound over the fibers.
    pub max_upper: f64,
    /// Sample id attaining the largest lower bound.
    pub lower_witness: String,
    /// Sample id attaining the largest upper bound.
    pub upper_witness: String,
    /// True when the two bounds bracket a common value.
    pub consistent: bool,
}

/// Multiplies an element fiberwise by a scalar function of the base.
///
/// The sample sets of `phi` and `element` must coincide.
pub fn module_action(
    phi: &CTFunction,
    element: &FiberedElement,
) -> Result<FiberedElement, FieldError> {
    if phi.ids() != element.ids() {
        return Err(FieldError::SampleSetMismatch {
            detail: format!(
                "scalar ids {:?} differ from element ids {:?}",
                phi.ids(),
                element.ids()
            ),
        });
    }
    let mut out = FiberedElement::default();
    for (id, poly) in element.iter() {
        let value = phi.value(id).expect("id sets verified equal");
        out.insert(id, poly.scaled(value));
    }
    Ok(out)
}

fn resolve_element<'a>(
    spec: &'a CovariantFieldSpec,
    name: &str,
) -> Result<&'a FiberedElement, FieldError> {
    spec.element(name).ok_or_else(|| FieldError::UnknownElement {
        name: name.to_string(),
    })
}

fn check_scalar_ids(spec: &CovariantFieldSpec, phi: &CTFunction) -> Result<(), FieldError> {
    let spec_ids: std::collections::BTreeSet<String> =
        spec.sample_ids().iter().map(|s| s.to_string()).collect();
    if phi.ids() != spec_ids {
        return Err(FieldError::SampleSetMismatch {
            detail: format!(
                "scalar ids {:?} differ from base ids {:?}",
                phi.ids(),
                spec_ids
            ),
        });
    }
    Ok(())
}

/// Verifies that scalar multiplication commutes with the character action:
/// for every fiber, sample point x, and the element f, the polynomials
/// α_x(φ·f) and φ·α_x(f) agree coefficientwise.
pub fn check_covariance(
    spec: &CovariantFieldSpec,
    element: &str,
    phi: &CTFunction,
    points: &[Vec<f64>],
    tolerance: f64,
) -> Result<ResidualReport, FieldError> {
    let f = resolve_element(spec, element)?;
    check_scalar_ids(spec, phi)?;
    for (i, x) in points.iter().enumerate() {
        if x.len() != spec.group_dim() {
            return Err(FieldError::InvalidParameter {
                name: "points",
                reason: format!(
                    "point {} has dimension {}, expected {}",
                    i,
                    x.len(),
                    spec.group_dim()
                ),
            });
        }
    }
    let mut per_fiber = BTreeMap::new();
    for (id, poly) in f.iter() {
        let cocycle = spec.fiber(id).expect("validated fiber set");
        let value = phi.value(id).expect("validated scalar ids");
        let scaled = poly.scaled(value);
        let mut worst = 0.0f64;
        for x in points {
            let lhs = act(&scaled, cocycle.action(), x)?;
            let rhs = act(poly, cocycle.action(), x)?.scaled(value);
            worst = worst.max(lhs.max_coeff_distance(&rhs)?);
        }
        per_fiber.insert(id.to_string(), worst);
    }
    Ok(ResidualReport::from_per_fiber(per_fiber, tolerance))
}

/// Verifies that scalar functions of the base are central for the deformed
/// product: in every fiber, (φ·f) # g, φ·(f # g), and f # (φ·g) agree
/// coefficientwise.
pub fn check_centrality(
    spec: &CovariantFieldSpec,
    left: &str,
    right: &str,
    phi: &CTFunction,
    tolerance: f64,
) -> Result<ResidualReport, FieldError> {
    let f = resolve_element(spec, left)?;
    let g = resolve_element(spec, right)?;
    check_scalar_ids(spec, phi)?;
    let mut per_fiber = BTreeMap::new();
    for (id, fs) in f.iter() {
        let gs = g.fiber(id).expect("validated element completeness");
        let cocycle = spec.fiber(id).expect("validated fiber set");
        let value = phi.value(id).expect("validated scalar ids");
        let scaled_first = deformed_mul(&fs.scaled(value), gs, cocycle)?;
        let scaled_middle = deformed_mul(fs, gs, cocycle)?.scaled(value);
        let scaled_last = deformed_mul(fs, &gs.scaled(value), cocycle)?;
        let worst = scaled_first
            .max_coeff_distance(&scaled_middle)?
            .max(scaled_middle.max_coeff_distance(&scaled_last)?);
        per_fiber.insert(id.to_string(), worst);
    }
    Ok(ResidualReport::from_per_fiber(per_fiber, tolerance))
}

/// Verifies exactness of the scalar module structure: the constant 1 acts
/// as the identity, and the indicator of a sample keeps that fiber verbatim
/// while annihilating every other fiber. Both identities involve only
/// multiplication by the exact constants 1 and 0, so the tolerance is zero
/// and any nonzero residual is a structural failure.
pub fn nondegeneracy_check(
    spec: &CovariantFieldSpec,
    element: &str,
) -> Result<ResidualReport, FieldError> {
    let f = resolve_element(spec, element)?;
    let ids: Vec<String> = spec.sample_ids().iter().map(|s| s.to_string()).collect();
    let mut per_fiber: BTreeMap<String, f64> =
        ids.iter().map(|id| (id.clone(), 0.0f64)).collect();

    let unit = module_action(&CTFunction::one(ids.clone()), f)?;
    for (id, poly) in f.iter() {
        let worst = per_fiber.get_mut(id).expect("id present");
        *worst = worst.max(
            unit.fiber(id)
                .expect("complete element")
                .max_coeff_distance(poly)?,
        );
    }

    for on in &ids {
        let cut = module_action(&CTFunction::indicator(ids.clone(), on), f)?;
        for (id, poly) in cut.iter() {
            let expected = if id == on {
                f.fiber(id).expect("complete element").clone()
            } else {
                TrigPoly::zero(poly.dim())
            };
            let worst = per_fiber.get_mut(id).expect("id present");
            *worst = worst.max(poly.max_coeff_distance(&expected)?);
        }
    }
    Ok(ResidualReport::from_per_fiber(per_fiber, 0.0))
}

/// Summarizes a fiberwise norm profile under the rule that the field norm
/// is the supremum of the fiber norms: the certified field bracket is
/// [max of lower bounds, max of upper bounds], and the profile is
/// consistent when that interval is nonempty.
pub fn sup_axiom_check(profile: &FiberNormProfile) -> Result<SupAxiomReport, FieldError> {
    if profile.is_empty() {
        return Err(FieldError::InvalidParameter {
            name: "profile",
            reason: "empty norm profile".into(),
        });
    }
    let mut sup_lower = f64::NEG_INFINITY;
    let mut max_upper = f64::NEG_INFINITY;
    let mut lower_witness = String::new();
    let mut upper_witness = String::new();
    for (id, bracket) in profile.iter() {
        if bracket.lower() > sup_lower {
            sup_lower = bracket.lower();
            lower_witness = id.to_string();
        }
        if bracket.upper() > max_upper {
            max_upper = bracket.upper();
            upper_witness = id.to_string();
        }
    }
    Ok(SupAxiomReport {
        sup_lower,
        max_upper,
        lower_witness,
        upper_witness,
        consistent: sup_lower <= max_upper,
    })
}
