//! Builders assembling concrete covariant fields.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::error::ScenarioError;
use super::su2::{restrict_su2, Su2Poly};
use crate::algebra::{
    CharacterAction, PhaseCocycle, SkewForm, TrigPoly, PHASE_CONSTANT,
};
use crate::field::{BaseSample, CovariantFieldSpec, FiberedElement, Neighbor};

/// The name under which every builder stores its element.
const ELEMENT_NAME: &str = "element";

fn require_sorted_coords(
    name: &'static str,
    values: &[f64],
    min_allowed: f64,
) -> Result<(), ScenarioError> {
    if values.is_empty() {
        return Err(ScenarioError::InvalidParameter {
            name,
            reason: "at least one value is required".into(),
        });
    }
    for v in values {
        if !v.is_finite() {
            return Err(ScenarioError::InvalidParameter {
                name,
                reason: "non-finite value".into(),
            });
        }
        if *v < min_allowed {
            return Err(ScenarioError::InvalidParameter {
                name,
                reason: format!("value {v} is below the minimum {min_allowed}"),
            });
        }
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ScenarioError::InvalidParameter {
            name,
            reason: "values must be strictly increasing".into(),
        });
    }
    Ok(())
}

/// Builds a chain of samples over a strictly increasing 1-d coordinate,
/// with the same element polynomial in every fiber and a caller-supplied
/// cocycle per coordinate value.
fn chain_family<F>(
    element: &TrigPoly,
    coords: &[f64],
    id_prefix: &str,
    mut cocycle_at: F,
) -> Result<CovariantFieldSpec, ScenarioError>
where
    F: FnMut(f64) -> Result<PhaseCocycle, ScenarioError>,
{
    let ids: Vec<String> = (0..coords.len())
        .map(|i| format!("{id_prefix}{i:03}"))
        .collect();
    let mut samples = Vec::with_capacity(coords.len());
    for (i, value) in coords.iter().enumerate() {
        let mut adjacency = Vec::new();
        if i > 0 {
            adjacency.push(Neighbor {
                id: ids[i - 1].clone(),
                distance: value - coords[i - 1],
            });
        }
        if i + 1 < coords.len() {
            adjacency.push(Neighbor {
                id: ids[i + 1].clone(),
                distance: coords[i + 1] - value,
            });
        }
        samples.push(BaseSample {
            id: ids[i].clone(),
            coords: vec![*value],
            adjacency,
        });
    }
    let mut fibers = BTreeMap::new();
    let mut fiber_polys = FiberedElement::default();
    for (i, value) in coords.iter().enumerate() {
        fibers.insert(ids[i].clone(), cocycle_at(*value)?);
        fiber_polys.insert(ids[i].clone(), element.clone());
    }
    let mut elements = BTreeMap::new();
    elements.insert(ELEMENT_NAME.to_string(), fiber_polys);
    Ok(CovariantFieldSpec::new(samples, fibers, elements)?)
}

/// A family of 2-torus fibers indexed by the deformation angle θ.
///
/// The fiber over θ multiplies characters with the lattice phase
/// πθ·(k₁l₂ − k₂l₁), so the two generating characters satisfy the
/// commutation phase e^{2πiθ}; θ = 0 is the commutative fiber. Samples are
/// named `t000, t001, …` in coordinate order and chained by adjacency.
/// The same polynomial `element` (which must be 2-dimensional) is placed in
/// every fiber under the element name `"element"`.
pub fn build_rotation_family(
    element: &TrigPoly,
    thetas: &[f64],
) -> Result<CovariantFieldSpec, ScenarioError> {
    if element.dim() != 2 {
        return Err(ScenarioError::InvalidParameter {
            name: "element",
            reason: format!("torus dimension {} is not 2", element.dim()),
        });
    }
    require_sorted_coords("thetas", thetas, f64::NEG_INFINITY)?;
    chain_family(element, thetas, "t", |theta| {
        let b = DMatrix::from_row_slice(
            2,
            2,
            &[
                0.0,
                std::f64::consts::PI * theta,
                -std::f64::consts::PI * theta,
                0.0,
            ],
        );
        Ok(PhaseCocycle::from_deformation_matrix(
            b,
            CharacterAction::identity(2),
        )?)
    })
}

/// The semiclassical family of a fixed invertible skew form J₀: the fiber
/// over ℏ ≥ 0 deforms with B(ℏ) = ℏ·κ·J₀⁻¹, which is the deformation
/// induced by the scaled form J(ℏ) = J₀/ℏ; ℏ = 0 is the classical fiber.
///
/// `scale_form` is J₀ (square, even-dimensional, skew, invertible — no
/// determinant normalization is required). Samples are named `h000, h001,
/// …` in coordinate order and chained by adjacency; the same polynomial is
/// placed in every fiber under the element name `"element"`.
pub fn build_hbar_family(
    element: &TrigPoly,
    action: &CharacterAction,
    scale_form: &DMatrix<f64>,
    hbars: &[f64],
) -> Result<CovariantFieldSpec, ScenarioError> {
    if element.dim() != action.torus_dim() {
        return Err(ScenarioError::InvalidParameter {
            name: "element",
            reason: format!(
                "torus dimension {} does not match the action's {}",
                element.dim(),
                action.torus_dim()
            ),
        });
    }
    if scale_form.nrows() != action.group_dim() || scale_form.ncols() != action.group_dim() {
        return Err(ScenarioError::InvalidParameter {
            name: "scale_form",
            reason: format!(
                "shape {}×{} does not match the group dimension {}",
                scale_form.nrows(),
                scale_form.ncols(),
                action.group_dim()
            ),
        });
    }
    require_sorted_coords("hbars", hbars, 0.0)?;
    let inverse = scale_form.clone().try_inverse().ok_or({
        ScenarioError::InvalidParameter {
            name: "scale_form",
            reason: "matrix is singular".into(),
        }
    })?;
    // The inverse of a skew matrix is skew; antisymmetrize to shed the
    // rounding residue of the solver before the cocycle's exactness check.
    let inverse = (&inverse - inverse.transpose()) * 0.5;
    chain_family(element, hbars, "h", |hbar| {
        let b = &inverse * (hbar * PHASE_CONSTANT);
        Ok(PhaseCocycle::from_deformation_matrix(b, action.clone())?)
    })
}

/// Polar-grid disk of fibers for restrictions from S¹ × SU(2).
///
/// The base is the closed unit disk sampled at the center plus `radial`
/// rings of `angular` nodes each. The fiber over an interior point is a
/// 2-torus (u-phase and w-phase) deformed with B = κ·J⁻¹ under the flow
/// weights diag(−1, 2); the boundary ring carries commutative 1-torus
/// fibers (the w-coordinate has collapsed) with flow weight −1. The element
/// `"element"` is the fiberwise restriction of `poly`.
///
/// Grid ids are `r{ring:03}a{node:03}` with the center at `r000a000`; node
/// angles are 2π·node/angular and ring radii ring/radial, so doubling both
/// counts yields a refinement whose shared samples have bitwise-identical
/// coordinates.
pub fn build_tsu2_disk(
    poly: &Su2Poly,
    radial: usize,
    angular: usize,
    form: &SkewForm,
) -> Result<CovariantFieldSpec, ScenarioError> {
    if radial < 1 {
        return Err(ScenarioError::InvalidParameter {
            name: "radial",
            reason: "at least one ring is required".into(),
        });
    }
    if angular < 3 {
        return Err(ScenarioError::InvalidParameter {
            name: "angular",
            reason: "at least three nodes per ring are required".into(),
        });
    }
    if form.dim() != 2 {
        return Err(ScenarioError::InvalidParameter {
            name: "form",
            reason: format!("group dimension {} is not 2", form.dim()),
        });
    }
    let inverse = form.inverse()?;
    let deformation = (&inverse - inverse.transpose()) * (0.5 * PHASE_CONSTANT);
    let interior_action = CharacterAction::new(DMatrix::from_row_slice(
        2,
        2,
        &[-1.0, 0.0, 0.0, 2.0],
    ))?;
    let boundary_action = CharacterAction::new(DMatrix::from_row_slice(1, 2, &[-1.0, 0.0]))?;

    let id_of = |ring: usize, node: usize| format!("r{ring:03}a{node:03}");
    let radial_step = 1.0 / radial as f64;
    let mut samples = Vec::new();
    let mut fibers = BTreeMap::new();
    let mut restricted = FiberedElement::default();

    // Center node: interior fiber over z₀ = 0, adjacent to the first ring.
    let center_id = id_of(0, 0);
    samples.push(BaseSample {
        id: center_id.clone(),
        coords: vec![0.0, 0.0],
        adjacency: (0..angular)
            .map(|node| Neighbor {
                id: id_of(1, node),
                distance: radial_step,
            })
            .collect(),
    });
    fibers.insert(
        center_id.clone(),
        PhaseCocycle::from_deformation_matrix(deformation.clone(), interior_action.clone())?,
    );
    restricted.insert(center_id, restrict_su2(poly, Complex64::ZERO)?);

    for ring in 1..=radial {
        let r = ring as f64 / radial as f64;
        let chord = 2.0 * r * (std::f64::consts::PI / angular as f64).sin();
        for node in 0..angular {
            let id = id_of(ring, node);
            let turn = node as f64 / angular as f64;
            let phi = std::f64::consts::TAU * turn;
            let z0 = Complex64::new(r * phi.cos(), r * phi.sin());
            let mut adjacency = vec![
                Neighbor {
                    id: id_of(ring, (node + 1) % angular),
                    distance: chord,
                },
                Neighbor {
                    id: id_of(ring, (node + angular - 1) % angular),
                    distance: chord,
                },
            ];
            adjacency.push(Neighbor {
                id: if ring == 1 {
                    id_of(0, 0)
                } else {
                    id_of(ring - 1, node)
                },
                distance: radial_step,
            });
            if ring < radial {
                adjacency.push(Neighbor {
                    id: id_of(ring + 1, node),
                    distance: radial_step,
                });
            }
            samples.push(BaseSample {
                id: id.clone(),
                coords: vec![z0.re, z0.im],
                adjacency,
            });
            let cocycle = if ring == radial {
                PhaseCocycle::classical(boundary_action.clone())
            } else {
                PhaseCocycle::from_deformation_matrix(
                    deformation.clone(),
                    interior_action.clone(),
                )?
            };
            fibers.insert(id.clone(), cocycle);
            restricted.insert(id, restrict_su2(poly, z0)?);
        }
    }

    let mut elements = BTreeMap::new();
    elements.insert(ELEMENT_NAME.to_string(), restricted);
    Ok(CovariantFieldSpec::new(samples, fibers, elements)?)
}
