//! Integration of the group action against a compactly supported weight.
//!
//! For an integrable weight Φ on ℝ²ⁿ the smeared action
//!
//! ```text
//!   Θ_Φ(f) = ∫ Φ(X)·Θ_X(f) dX
//! ```
//!
//! is again diagonal on characters: c_k ↦ Φ̂(freq(k))·c_k, where
//! Φ̂(u) = ∫ Φ(X)·exp(2πi·u·X) dX. This module represents Φ by samples on a
//! uniform tensor grid over a box, computes Φ̂ by trapezoid quadrature, and
//! differentiates Φ by central differences. Because the derivative and the
//! quadrature are built from the same grid, discrete summation by parts
//! gives the calculus identity
//!
//! ```text
//!   δ_j(Θ_Φ f) = −Θ_{∂_jΦ}(f)
//! ```
//!
//! up to a residual |c_k|·|Φ̂|·|2πu_j − sin(2πu_j h)/h| per coefficient —
//! second order in the grid step h — provided Φ vanishes at the box edges.

use num_complex::Complex64;

use super::action::CharacterAction;
use super::error::AlgebraError;
use super::poly::TrigPoly;
use crate::numeric::CompensatedSum;

/// A weight function on ℝ²ⁿ sampled on a uniform tensor grid over
/// [−L, L]²ⁿ, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWeight {
    group_dim: usize,
    half_width: f64,
    points: usize,
    samples: Vec<f64>,
}

impl SampledWeight {
    /// Wraps raw samples (row-major, axis 0 slowest). `points` is the grid
    /// resolution per axis; the sample count must be points^group_dim.
    pub fn from_samples(
        group_dim: usize,
        half_width: f64,
        points: usize,
        samples: Vec<f64>,
    ) -> Result<Self, AlgebraError> {
        if group_dim == 0 {
            return Err(AlgebraError::InvalidParameter {
                name: "group_dim",
                reason: "weight needs at least one axis".into(),
            });
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(AlgebraError::InvalidParameter {
                name: "half_width",
                reason: format!("must be positive and finite, got {half_width}"),
            });
        }
        if points < 5 {
            return Err(AlgebraError::InvalidParameter {
                name: "points",
                reason: format!("need at least 5 grid points per axis, got {points}"),
            });
        }
        let expected = points
            .checked_pow(group_dim as u32)
            .filter(|n| *n <= 200_000_000)
            .ok_or_else(|| AlgebraError::InvalidParameter {
                name: "points",
                reason: format!("grid {points}^{group_dim} is too large"),
            })?;
        if samples.len() != expected {
            return Err(AlgebraError::InvalidParameter {
                name: "samples",
                reason: format!("expected {expected} samples, got {}", samples.len()),
            });
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(AlgebraError::NonFinite {
                context: "weight samples",
            });
        }
        Ok(Self {
            group_dim,
            half_width,
            points,
            samples,
        })
    }

    /// A smooth product bump: each axis carries exp(−1/(1−t²)) for
    /// t = y/half_width inside the box and 0 at |t| ≥ 1, so the weight and
    /// all its derivatives vanish at the boundary. The result is normalized
    /// to have discrete integral exactly 1.
    pub fn product_bump(
        group_dim: usize,
        half_width: f64,
        points: usize,
    ) -> Result<Self, AlgebraError> {
        let probe = Self::from_samples(
            group_dim,
            half_width,
            points,
            vec![0.0; points.checked_pow(group_dim as u32).unwrap_or(0).max(1)],
        )?;
        let step = probe.step();
        let axis: Vec<f64> = (0..points)
            .map(|i| {
                let t = (-half_width + i as f64 * step) / half_width;
                let gap = 1.0 - t * t;
                if gap <= 0.0 {
                    0.0
                } else {
                    (-1.0 / gap).exp()
                }
            })
            .collect();
        let total = points.pow(group_dim as u32);
        let mut samples = vec![0.0f64; total];
        let mut index = vec![0usize; group_dim];
        for slot in samples.iter_mut() {
            let mut v = 1.0;
            for &i in &index {
                v *= axis[i];
            }
            *slot = v;
            let mut ax = group_dim;
            while ax > 0 {
                ax -= 1;
                index[ax] += 1;
                if index[ax] < points {
                    break;
                }
                index[ax] = 0;
            }
        }
        Self::from_samples(group_dim, half_width, points, samples)?.normalized()
    }

    /// Rescales so the discrete trapezoid integral equals exactly 1.
    pub fn normalized(&self) -> Result<Self, AlgebraError> {
        let total = self.integral();
        if !total.is_finite() || total.abs() < 1e-300 {
            return Err(AlgebraError::VanishingWeight { integral: total });
        }
        let samples = self.samples.iter().map(|s| s / total).collect();
        Self::from_samples(self.group_dim, self.half_width, self.points, samples)
    }

    /// Number of axes (the acting group dimension 2n).
    pub fn group_dim(&self) -> usize {
        self.group_dim
    }

    /// Grid resolution per axis.
    pub fn points(&self) -> usize {
        self.points
    }

    /// Box half-width L.
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Grid step h = 2L/(points − 1).
    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    fn axis_weights(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points)
            .map(|i| {
                if i == 0 || i + 1 == self.points {
                    0.5 * h
                } else {
                    h
                }
            })
            .collect()
    }

    /// Trapezoid integral ∫Φ over the box.
    pub fn integral(&self) -> f64 {
        let w = self.axis_weights();
        let mut acc = CompensatedSum::new();
        self.fold_grid(|index, sample| {
            let mut weight = 1.0;
            for &i in index {
                weight *= w[i];
            }
            acc.add(sample * weight);
        });
        acc.value()
    }

    /// Trapezoid integral ∫|Φ| — the exact ℓ¹→ℓ¹ operator bound of the
    /// discrete smeared action on coefficients.
    pub fn l1_norm(&self) -> f64 {
        let w = self.axis_weights();
        let mut acc = CompensatedSum::new();
        self.fold_grid(|index, sample| {
            let mut weight = 1.0;
            for &i in index {
                weight *= w[i];
            }
            acc.add(sample.abs() * weight);
        });
        acc.value()
    }

    /// The transform Φ̂(u) = ∫Φ(X)·exp(2πi·u·X) dX by trapezoid quadrature.
    pub fn fourier_at(&self, freq: &[f64]) -> Result<Complex64, AlgebraError> {
        if freq.len() != self.group_dim {
            return Err(AlgebraError::GroupDimension {
                expected: self.group_dim,
                found: freq.len(),
            });
        }
        let w = self.axis_weights();
        let h = self.step();
        let tau = 2.0 * std::f64::consts::PI;
        // Per-axis phase-times-weight tables.
        let tables: Vec<Vec<Complex64>> = freq
            .iter()
            .map(|u| {
                (0..self.points)
                    .map(|i| {
                        let y = -self.half_width + i as f64 * h;
                        Complex64::cis(tau * u * y) * w[i]
                    })
                    .collect()
            })
            .collect();
        let mut acc = Complex64::ZERO;
        self.fold_grid(|index, sample| {
            let mut phase = Complex64::new(1.0, 0.0);
            for (ax, &i) in index.iter().enumerate() {
                phase *= tables[ax][i];
            }
            acc += phase * sample;
        });
        Ok(acc)
    }

    /// Central-difference partial derivative along one axis. Boundary slices
    /// get derivative 0, which is exact only when the weight vanishes near
    /// the box edges (as the product bump does).
    pub fn partial_derivative(&self, axis: usize) -> Result<Self, AlgebraError> {
        if axis >= self.group_dim {
            return Err(AlgebraError::InvalidParameter {
                name: "axis",
                reason: format!(
                    "axis {axis} out of range for {} axes",
                    self.group_dim
                ),
            });
        }
        let h = self.step();
        let stride = self
            .points
            .pow((self.group_dim - 1 - axis) as u32);
        let mut out = vec![0.0f64; self.samples.len()];
        for (flat, slot) in out.iter_mut().enumerate() {
            let i = (flat / stride) % self.points;
            if i == 0 || i + 1 == self.points {
                continue;
            }
            *slot = (self.samples[flat + stride] - self.samples[flat - stride]) / (2.0 * h);
        }
        Self::from_samples(self.group_dim, self.half_width, self.points, out)
    }

    /// Sample value by grid index (for tests and inspection).
    pub fn sample(&self, index: &[usize]) -> Result<f64, AlgebraError> {
        if index.len() != self.group_dim || index.iter().any(|i| *i >= self.points) {
            return Err(AlgebraError::InvalidParameter {
                name: "index",
                reason: format!("index {index:?} out of range"),
            });
        }
        let mut flat = 0usize;
        for &i in index {
            flat = flat * self.points + i;
        }
        Ok(self.samples[flat])
    }

    fn fold_grid<F: FnMut(&[usize], f64)>(&self, mut visit: F) {
        let mut index = vec![0usize; self.group_dim];
        for &sample in &self.samples {
            visit(&index, sample);
            let mut ax = self.group_dim;
            while ax > 0 {
                ax -= 1;
                index[ax] += 1;
                if index[ax] < self.points {
                    break;
                }
                index[ax] = 0;
            }
        }
    }
}

/// Applies the smeared action Θ_Φ: coefficients scale by Φ̂(freq(k)).
///
/// The coefficient ℓ¹ norm of the result is bounded by
/// `f.l1_norm() * weight.l1_norm()` exactly (each discrete transform value
/// is a weighted sum of unit-modulus phases).
pub fn integrated_action(
    f: &TrigPoly,
    action: &CharacterAction,
    weight: &SampledWeight,
) -> Result<TrigPoly, AlgebraError> {
    if f.dim() != action.torus_dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: f.dim(),
            right: action.torus_dim(),
        });
    }
    if weight.group_dim() != action.group_dim() {
        return Err(AlgebraError::GroupDimension {
            expected: action.group_dim(),
            found: weight.group_dim(),
        });
    }
    let mut out = TrigPoly::zero(f.dim());
    for (k, c) in f.iter() {
        let freq = action.frequency(k)?;
        let factor = weight.fourier_at(freq.as_slice())?;
        out.add_term(k, c * factor)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::calculus::derivative;
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_bump_is_normalized_and_vanishes_at_edges() {
        let bump = SampledWeight::product_bump(2, 1.0, 41).unwrap();
        assert!((bump.integral() - 1.0).abs() < 1e-14);
        assert_eq!(bump.sample(&[0, 20]).unwrap(), 0.0);
        assert_eq!(bump.sample(&[20, 40]).unwrap(), 0.0);
        assert!(bump.sample(&[20, 20]).unwrap() > 0.0);
    }

    #[test]
    fn transform_at_zero_frequency_is_the_integral() {
        let bump = SampledWeight::product_bump(2, 1.0, 41).unwrap();
        let v = bump.fourier_at(&[0.0, 0.0]).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn transform_of_even_weight_is_real() {
        let bump = SampledWeight::product_bump(1, 1.0, 101).unwrap();
        for u in [0.1, 0.35, 0.8] {
            let v = bump.fourier_at(&[u]).unwrap();
            assert!(v.im.abs() < 1e-15, "u = {u}: {v}");
        }
    }

    #[test]
    fn derivative_of_even_bump_is_odd() {
        let bump = SampledWeight::product_bump(1, 1.0, 101).unwrap();
        let d = bump.partial_derivative(0).unwrap();
        for i in 0..101 {
            let a = d.sample(&[i]).unwrap();
            let b = d.sample(&[100 - i]).unwrap();
            assert!((a + b).abs() < 1e-12);
        }
    }

    #[test]
    fn smeared_action_scales_coefficients_by_the_transform() {
        let action = CharacterAction::identity(2);
        let bump = SampledWeight::product_bump(2, 1.0, 61).unwrap();
        let f = TrigPoly::from_terms(
            2,
            [(&[1, 0][..], c(2.0, 0.0)), (&[0, 3][..], c(0.0, 1.0))],
        )
        .unwrap();
        let g = integrated_action(&f, &action, &bump).unwrap();
        let expected10 = bump.fourier_at(&[1.0, 0.0]).unwrap() * c(2.0, 0.0);
        assert!((g.coeff(&[1, 0]) - expected10).norm() < 1e-14);
        // ℓ¹ contraction against the weight's ℓ¹ mass.
        assert!(g.l1_norm() <= f.l1_norm() * bump.l1_norm() + 1e-12);
    }

    #[test]
    fn derivation_of_smeared_action_is_smearing_against_minus_gradient() {
        // δ_j(Θ_Φ f) = −Θ_{∂_jΦ}(f), up to the documented O(h²) residual.
        let action =
            CharacterAction::new(DMatrix::from_row_slice(2, 2, &[0.05, 0.0, 0.0, 0.05]))
                .unwrap();
        let bump = SampledWeight::product_bump(2, 1.0, 301).unwrap();
        let f = TrigPoly::from_terms(
            2,
            [
                (&[1, 0][..], c(0.9, -0.2)),
                (&[2, 1][..], c(-0.4, 0.6)),
                (&[0, 3][..], c(0.3, 0.3)),
            ],
        )
        .unwrap();
        let smeared = integrated_action(&f, &action, &bump).unwrap();
        for j in 0..2 {
            let mut alpha = vec![0usize; 2];
            alpha[j] = 1;
            let lhs = derivative(&smeared, &action, &alpha).unwrap();
            let grad = bump.partial_derivative(j).unwrap();
            let rhs = integrated_action(&f, &action, &grad)
                .unwrap()
                .scaled(c(-1.0, 0.0));
            let residual = lhs.max_coeff_distance(&rhs).unwrap();
            assert!(residual < 1e-5, "axis {j}: residual {residual}");
        }
    }

    #[test]
    fn rejects_all_zero_weight_normalization() {
        let zero = SampledWeight::from_samples(1, 1.0, 11, vec![0.0; 11]).unwrap();
        assert!(matches!(
            zero.normalized(),
            Err(AlgebraError::VanishingWeight { .. })
        ));
    }

    #[test]
    fn rejects_sample_count_mismatch() {
        assert!(matches!(
            SampledWeight::from_samples(2, 1.0, 11, vec![0.0; 100]),
            Err(AlgebraError::InvalidParameter { .. })
        ));
    }
}
