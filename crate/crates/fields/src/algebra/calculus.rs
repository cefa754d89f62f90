//! Derivations along the group action and the derivative seminorm.
//!
//! Differentiating the translation action at the identity gives, for each
//! group direction j ≤ 2n, the derivation
//!
//! ```text
//!   δ_j(e_k) = 2πi·freq(k)_j · e_k,
//! ```
//!
//! and more generally δ^α(e_k) = Π_j (2πi·freq(k)_j)^{α_j}·e_k for a
//! multi-index α. These commute with each other and satisfy the Leibniz rule
//! for both the pointwise and the deformed product (the deformation twists
//! only the phases, which δ_j scales uniformly).

use num_complex::Complex64;

use super::action::CharacterAction;
use super::error::AlgebraError;
use super::poly::TrigPoly;
use crate::numeric::CompensatedSum;

/// Applies the iterated derivation δ^α along the action: coefficients scale
/// by Π_j (2πi·freq(k)_j)^{α_j}.
pub fn derivative(
    f: &TrigPoly,
    action: &CharacterAction,
    alpha: &[usize],
) -> Result<TrigPoly, AlgebraError> {
    if f.dim() != action.torus_dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: f.dim(),
            right: action.torus_dim(),
        });
    }
    if alpha.len() != action.group_dim() {
        return Err(AlgebraError::GroupDimension {
            expected: action.group_dim(),
            found: alpha.len(),
        });
    }
    let tau = 2.0 * std::f64::consts::PI;
    let mut out = TrigPoly::zero(f.dim());
    for (k, c) in f.iter() {
        let freq = action.frequency(k)?;
        let mut factor = Complex64::new(1.0, 0.0);
        for (j, &aj) in alpha.iter().enumerate() {
            if aj > 0 {
                factor *= Complex64::new(0.0, tau * freq[j]).powu(aj as u32);
            }
        }
        out.add_term(k, c * factor)?;
    }
    Ok(out)
}

/// Enumerates all multi-indices α ∈ ℕ^dims with |α| ≤ max_order, in graded
/// lexicographic order (total degree first, then lexicographic).
pub fn multi_indices(dims: usize, max_order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for order in 0..=max_order {
        let mut current = vec![0usize; dims];
        fill(&mut out, &mut current, 0, order);
    }
    out
}

fn fill(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, axis: usize, remaining: usize) {
    if axis + 1 == current.len() {
        current[axis] = remaining;
        out.push(current.clone());
        current[axis] = 0;
        return;
    }
    for take in (0..=remaining).rev() {
        current[axis] = take;
        fill(out, current, axis + 1, remaining - take);
        current[axis] = 0;
    }
}

/// The order-k derivative seminorm built from certified sup-norm upper
/// bounds:
///
/// ```text
///   |f|_k = Σ_{|α| ≤ k} (1/|α|!) · sup_upper(δ^α f),
/// ```
///
/// where sup_upper is the grid maximum plus its Lipschitz certificate, so
/// the reported value is a true upper bound for the weighted seminorm. The
/// weight depends on the total order |α| only.
pub fn seminorm_classical(
    f: &TrigPoly,
    action: &CharacterAction,
    order: usize,
    grid: usize,
) -> Result<f64, AlgebraError> {
    if order > 20 {
        return Err(AlgebraError::InvalidParameter {
            name: "order",
            reason: format!("seminorm order {order} exceeds the supported maximum 20"),
        });
    }
    let mut acc = CompensatedSum::new();
    for alpha in multi_indices(action.group_dim(), order) {
        let total: usize = alpha.iter().sum();
        let g = derivative(f, action, &alpha)?;
        let (grid_max, certificate) = g.grid_sup_estimate(grid)?;
        acc.add((grid_max + certificate) / factorial(total));
    }
    Ok(acc.value())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0f64, |acc, i| acc * i as f64)
}
