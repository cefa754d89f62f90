//! Fiberwise norm profiles of field elements.
//!
//! For a field element f = (f_s)_s the profile computes one certified norm
//! bracket per fiber: classical fibers use the sup norm with a Lipschitz
//! certificate, deformed fibers use the compression lower bound paired with
//! the C*-power upper bound. Fibers are processed in parallel but collected
//! in sample-id order, so the profile is deterministic.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::error::FieldError;
use super::types::{CovariantFieldSpec, FiberNormProfile};
use crate::norm::{norm_bracket, sup_norm, NormBracket};

/// Tuning knobs for fiberwise norm computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileParams {
    /// Half-width of the lattice box used for the compression lower bound.
    pub box_radius: i64,
    /// Number of squarings in the power upper bound.
    pub power_doublings: usize,
    /// Grid resolution per axis for classical (sup norm) fibers.
    pub classical_grid: usize,
    /// Abort threshold on the term count of intermediate powers.
    pub support_cap: usize,
}

impl Default for ProfileParams {
    fn default() -> Self {
        Self {
            box_radius: 32,
            power_doublings: 3,
            classical_grid: 256,
            support_cap: 20_000,
        }
    }
}

impl ProfileParams {
    fn validate(&self) -> Result<(), FieldError> {
        if self.box_radius < 0 {
            return Err(FieldError::InvalidParameter {
                name: "box_radius",
                reason: "must be nonnegative".into(),
            });
        }
        if self.classical_grid == 0 {
            return Err(FieldError::InvalidParameter {
                name: "classical_grid",
                reason: "must be at least 1".into(),
            });
        }
        if self.support_cap == 0 {
            return Err(FieldError::InvalidParameter {
                name: "support_cap",
                reason: "must be positive".into(),
            });
        }
        Ok(())
    }
}

/// Computes a certified norm bracket for every fiber of a named element.
pub fn quantized_norm_profile(
    spec: &CovariantFieldSpec,
    element: &str,
    params: &ProfileParams,
) -> Result<FiberNormProfile, FieldError> {
    params.validate()?;
    let f = spec
        .element(element)
        .ok_or_else(|| FieldError::UnknownElement {
            name: element.to_string(),
        })?;
    let jobs: Vec<(&str, &crate::algebra::TrigPoly)> = f.iter().collect();
    let brackets: Vec<(String, NormBracket)> = jobs
        .par_iter()
        .map(|(id, poly)| {
            let cocycle = spec.fiber(id).expect("validated fiber set");
            let bracket = if cocycle.is_classical() {
                sup_norm(poly, params.classical_grid)
            } else {
                norm_bracket(
                    poly,
                    cocycle,
                    params.box_radius,
                    params.power_doublings,
                    params.support_cap,
                )
            };
            bracket
                .map(|b| (id.to_string(), b))
                .map_err(|source| FieldError::FiberNorm {
                    id: id.to_string(),
                    source,
                })
        })
        .collect::<Result<_, _>>()?;
    Ok(FiberNormProfile::new(BTreeMap::from_iter(brackets)))
}
