//! Direct numerical integration of the oscillatory product pairing.
//!
//! The deformed product has an integral form: for characters with group
//! frequencies u = freq(k), v = freq(l), the structure constant is the
//! ε → 0 limit of the damped pairing
//!
//! ```text
//!   I_ε(k,l) = π^{−2n} ∬ dY dZ  e^{−ε(|Y|²+|Z|²)} · e^{2i·YᵀJZ}
//!                               · e^{i·a·Y} · e^{i·b·Z},
//! ```
//!
//! with a = 2πu, b = 2πv, both integrals over [−R, R]²ⁿ. This module
//! evaluates I_ε by quadrature alone — no closed form anywhere — so it can
//! serve as an independent oracle for the cocycle product:
//!
//! * the inner Z-integral factorizes into 1-D integrals
//!   G(w) = ∫ e^{−εz²}cos(wz) dz with w = 2JᵀY + b, tabulated once per
//!   damping on a uniform w-grid and interpolated;
//! * the outer Y-integral is a tensor-product trapezoid sum, spectrally
//!   accurate here because the integrand decays like a Gaussian inside the
//!   box;
//! * phases are unwrapped across a ladder of dampings and Richardson-
//!   extrapolated in ε² to remove the damping bias.
//!
//! [`calibrate_phase_constant`] runs this machinery over a panel of
//! frequency pairs and fits the single constant κ with
//! limit-phase(k,l) = κ·uᵀJ⁻¹v, reporting the spread across pairs. The fit
//! lands on κ = 2π² (see [`PHASE_CONSTANT`](super::PHASE_CONSTANT)).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::action::CharacterAction;
use super::error::AlgebraError;
use super::poly::TrigPoly;
use super::skew::{skew_deviation, SkewForm};
use crate::numeric::{
    cubic_interp, extrapolate_to_zero, CompensatedComplexSum, CompensatedSum,
};

/// Default damping ladder for phase extrapolation (largest first).
pub const DAMPING_LADDER: [f64; 3] = [0.2, 0.1, 0.05];

/// Spacing of the tabulated 1-D Gaussian-cosine integral G(w).
const G_TABLE_STEP: f64 = 0.02;

/// Step of the z-trapezoid used to fill the G table.
const G_BUILD_STEP: f64 = 0.0035;

/// Largest winding number tried when unwrapping damped phases.
const MAX_WINDING: i64 = 12;

/// Work guard: the Y-grid may not exceed this many points.
const MAX_GRID_WORK: f64 = 2.0e8;

/// Controls for one damped quadrature evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureParams {
    /// Gaussian damping strength ε > 0.
    pub damping: f64,
    /// Integration box half-width R; each variable runs over [−R, R].
    pub half_width: f64,
    /// Trapezoid points per axis (≥ 9).
    pub points: usize,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        Self {
            damping: 0.1,
            half_width: 14.0,
            points: 561,
        }
    }
}

impl QuadratureParams {
    fn validate(&self, group_dim: usize) -> Result<(), AlgebraError> {
        if !self.damping.is_finite() || self.damping <= 0.0 {
            return Err(AlgebraError::InvalidParameter {
                name: "damping",
                reason: format!("must be positive and finite, got {}", self.damping),
            });
        }
        if !self.half_width.is_finite() || self.half_width <= 0.0 {
            return Err(AlgebraError::InvalidParameter {
                name: "half_width",
                reason: format!("must be positive and finite, got {}", self.half_width),
            });
        }
        if self.points < 9 {
            return Err(AlgebraError::InvalidParameter {
                name: "points",
                reason: format!("need at least 9 trapezoid points, got {}", self.points),
            });
        }
        let work = (self.points as f64).powi(group_dim as i32);
        if work > MAX_GRID_WORK {
            return Err(AlgebraError::InvalidParameter {
                name: "points",
                reason: format!(
                    "grid of {}^{} = {:.2e} points exceeds the work limit {:.0e}",
                    self.points, group_dim, work, MAX_GRID_WORK
                ),
            });
        }
        Ok(())
    }
}

/// Tabulated values of G(w) = ∫_{−R}^{R} e^{−εz²} cos(wz) dz on a uniform
/// w-grid, with cubic interpolation. G is even, so only w ≥ 0 is stored.
struct GTable {
    values: Vec<f64>,
    wmax: f64,
}

impl GTable {
    fn build(damping: f64, half_width: f64, wmax: f64) -> Self {
        let entries = (wmax / G_TABLE_STEP).ceil() as usize + 4;
        let zcount = (2.0 * half_width / G_BUILD_STEP).ceil() as usize + 1;
        let zstep = 2.0 * half_width / (zcount - 1) as f64;
        // Precompute the Gaussian factor with trapezoid weights folded in.
        let weights: Vec<(f64, f64)> = (0..zcount)
            .map(|i| {
                let z = -half_width + i as f64 * zstep;
                let w = if i == 0 || i + 1 == zcount {
                    0.5 * zstep
                } else {
                    zstep
                };
                (z, (-damping * z * z).exp() * w)
            })
            .collect();
        let values: Vec<f64> = (0..entries)
            .into_par_iter()
            .map(|i| {
                let w = i as f64 * G_TABLE_STEP;
                let mut acc = CompensatedSum::new();
                for &(z, gw) in &weights {
                    acc.add(gw * (w * z).cos());
                }
                acc.value()
            })
            .collect();
        Self {
            values,
            wmax: (entries - 1) as f64 * G_TABLE_STEP,
        }
    }

    fn eval(&self, w: f64) -> f64 {
        let w = w.abs();
        if w >= self.wmax {
            // Out of tabulated range: the Gaussian transform has decayed to
            // the truncation floor; treat as zero.
            return 0.0;
        }
        cubic_interp(&self.values, 0.0, G_TABLE_STEP, w)
    }
}

fn validate_form(form: &DMatrix<f64>) -> Result<(), AlgebraError> {
    if form.nrows() != form.ncols() || form.nrows() == 0 {
        return Err(AlgebraError::MatrixShape {
            rows: form.nrows(),
            cols: form.ncols(),
            expected_rows: form.ncols().max(1),
            expected_cols: form.ncols().max(1),
        });
    }
    if form.nrows() % 2 != 0 {
        return Err(AlgebraError::OddDimension { dim: form.nrows() });
    }
    if form.iter().any(|x| !x.is_finite()) {
        return Err(AlgebraError::NonFinite {
            context: "pairing form matrix",
        });
    }
    let scale = form.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let deviation = skew_deviation(form);
    if deviation > 1e-12 * (1.0 + scale) {
        return Err(AlgebraError::NotSkew { deviation });
    }
    Ok(())
}

/// Largest |w| reachable by w = 2JᵀY + b over the integration box, given a
/// bound on |b| components.
fn w_range(form: &DMatrix<f64>, half_width: f64, bmax: f64) -> f64 {
    let g = form.nrows();
    let mut worst = 0.0f64;
    for j in 0..g {
        // Row j of 2Jᵀ is column j of J, doubled.
        let row_sum: f64 = (0..g).map(|i| 2.0 * form[(i, j)].abs()).sum();
        worst = worst.max(row_sum * half_width);
    }
    worst + bmax + 1.0
}

/// Evaluates the damped pairing I_ε for one frequency pair (a, b), with the
/// Z-integral already folded into the G table.
fn pair_integral(
    a: &DVector<f64>,
    b: &DVector<f64>,
    form: &DMatrix<f64>,
    params: &QuadratureParams,
    table: &GTable,
) -> Complex64 {
    let g = form.nrows();
    let n = params.points;
    let r = params.half_width;
    let step = 2.0 * r / (n - 1) as f64;
    let eps = params.damping;

    // Per-axis factors: trapezoid weight × Gaussian damping × phase e^{i a_j y}.
    let axis_factors: Vec<Vec<Complex64>> = (0..g)
        .map(|j| {
            (0..n)
                .map(|p| {
                    let y = -r + p as f64 * step;
                    let w = if p == 0 || p + 1 == n { 0.5 * step } else { step };
                    Complex64::cis(a[j] * y) * ((-eps * y * y).exp() * w)
                })
                .collect()
        })
        .collect();
    let ys: Vec<f64> = (0..n).map(|p| -r + p as f64 * step).collect();

    // Outer loop over the first axis runs in parallel; each row reduces
    // sequentially in odometer order, and rows are folded in index order, so
    // the result does not depend on the thread count.
    let row_sums: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|p0| {
            let mut acc = CompensatedComplexSum::new();
            let mut index = vec![0usize; g];
            index[0] = p0;
            let mut y = vec![0.0f64; g];
            loop {
                for (yi, pi) in y.iter_mut().zip(&index) {
                    *yi = ys[*pi];
                }
                let mut amp = Complex64::new(1.0, 0.0);
                for (j, factors) in axis_factors.iter().enumerate() {
                    amp *= factors[index[j]];
                }
                let mut gprod = 1.0;
                for j in 0..g {
                    // w_j = 2·(JᵀY)_j + b_j = 2·Σ_i J[i,j]·y_i + b_j.
                    let mut w = b[j];
                    for i in 0..g {
                        w += 2.0 * form[(i, j)] * y[i];
                    }
                    gprod *= table.eval(w);
                }
                acc.add(amp * gprod);
                // Odometer over axes 1..g (axis 0 is fixed to p0).
                let mut axis = 1;
                loop {
                    if axis == g {
                        return acc.value();
                    }
                    index[axis] += 1;
                    if index[axis] < n {
                        break;
                    }
                    index[axis] = 0;
                    axis += 1;
                }
            }
        })
        .collect();

    let mut total = CompensatedComplexSum::new();
    for v in row_sums {
        total.add(v);
    }
    let prefactor = std::f64::consts::PI.powi(-(g as i32));
    total.value() * prefactor
}

/// Deformed product computed by direct quadrature of the damped oscillatory
/// pairing — the oracle route.
///
/// `form` is the skew pairing matrix on the acting group; unlike the
/// closed-form cocycle it need not be normalized to |det| = 1, so scaled
/// forms s·J can probe the classical limit (the pairing amplitude then
/// carries the 1/|s|²ⁿ volume factor explicitly, and phases shrink like
/// 1/s). The result retains the ε damping bias: coefficient moduli shrink by
/// exp(−ε(|a|²+|b|²)/(4(ε²+s²)))-type factors and phases by 1/(1+O(ε²));
/// callers chasing exact structure constants must extrapolate over a damping
/// ladder as [`calibrate_phase_constant`] does.
pub fn deformed_mul_quadrature(
    f: &TrigPoly,
    g: &TrigPoly,
    form: &DMatrix<f64>,
    action: &CharacterAction,
    params: &QuadratureParams,
) -> Result<TrigPoly, AlgebraError> {
    validate_form(form)?;
    if form.nrows() != action.group_dim() {
        return Err(AlgebraError::MatrixShape {
            rows: form.nrows(),
            cols: form.ncols(),
            expected_rows: action.group_dim(),
            expected_cols: action.group_dim(),
        });
    }
    if f.dim() != action.torus_dim() || g.dim() != action.torus_dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    params.validate(action.group_dim())?;

    let tau = 2.0 * std::f64::consts::PI;
    let mut pairs = Vec::new();
    let mut bmax = 0.0f64;
    for (k, ck) in f.iter() {
        let a = action.frequency(k)? * tau;
        for (l, dl) in g.iter() {
            let b = action.frequency(l)? * tau;
            bmax = bmax.max(b.iter().fold(0.0f64, |m, x| m.max(x.abs())));
            let sum: Vec<i64> = k.iter().zip(l).map(|(x, y)| x + y).collect();
            pairs.push((sum, ck * dl, a.clone(), b));
        }
    }

    let table = GTable::build(
        params.damping,
        params.half_width,
        w_range(form, params.half_width, bmax),
    );
    let contributions: Vec<(Vec<i64>, Complex64)> = pairs
        .into_iter()
        .map(|(sum, weight, a, b)| {
            let value = pair_integral(&a, &b, form, params, &table);
            (sum, weight * value)
        })
        .collect();

    let mut out = TrigPoly::zero(f.dim());
    for (sum, value) in contributions {
        out.add_term(&sum, value)?;
    }
    Ok(out)
}

/// One frequency pair's contribution to the phase-constant fit.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationPair {
    /// Left lattice frequency k.
    pub left: Vec<i64>,
    /// Right lattice frequency l.
    pub right: Vec<i64>,
    /// Skew pairing q = freq(k)ᵀJ⁻¹freq(l).
    pub pairing: f64,
    /// Extrapolated ε → 0 phase of the pairing integral.
    pub limit_phase: f64,
    /// Winding number selected by the unwrapping search.
    pub winding: i64,
    /// Extrapolation residual (spread of the unwrapped ladder values).
    pub residual: f64,
    /// This pair's estimate of the constant, limit_phase / pairing.
    pub constant: f64,
}

/// Result of fitting the phase constant from quadrature alone.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseCalibration {
    /// Mean of the per-pair constants.
    pub constant: f64,
    /// Max − min of the per-pair constants.
    pub spread: f64,
    /// Largest extrapolation residual across pairs.
    pub max_residual: f64,
    /// Detailed per-pair records.
    pub pairs: Vec<CalibrationPair>,
}

/// Standard panel of planar frequency pairs used for calibration. The
/// pairings q = freq(k)ᵀJ⁻¹freq(l) span {±1, ±2} under the identity action
/// with the standard form, exercising several windings of the limit phase.
const CALIBRATION_PAIRS: [([i64; 2], [i64; 2]); 5] = [
    ([1, 0], [0, 1]),
    ([0, 1], [1, 0]),
    ([1, 1], [1, -1]),
    ([1, 0], [1, 1]),
    ([2, 0], [0, 1]),
];

/// Measures the phase constant κ from the quadrature oracle alone.
///
/// For each probe pair the damped pairing integral is evaluated on the
/// `ladder` of dampings (all > 0, at least two values). Each damped phase is
/// known only mod 2π, so every winding hypothesis up to ±12 turns is tested:
/// the ladder phases are unwrapped toward the hypothesis, rescaled by the
/// leading 1/(1+ε²) damping model, and extrapolated to ε = 0; the hypothesis
/// with the smallest ladder spread wins. A best residual above
/// `fit_tolerance` fails the calibration rather than returning a guess.
///
/// The fitted constant satisfies limit_phase = κ·q on every pair; `spread`
/// reports the disagreement across pairs.
pub fn calibrate_phase_constant(
    form: &SkewForm,
    action: &CharacterAction,
    ladder: &[f64],
    base: &QuadratureParams,
    fit_tolerance: f64,
) -> Result<PhaseCalibration, AlgebraError> {
    if action.torus_dim() != 2 {
        return Err(AlgebraError::InvalidParameter {
            name: "action",
            reason: format!(
                "calibration probes planar frequency pairs; torus dimension is {}",
                action.torus_dim()
            ),
        });
    }
    if form.dim() != action.group_dim() {
        return Err(AlgebraError::MatrixShape {
            rows: form.dim(),
            cols: form.dim(),
            expected_rows: action.group_dim(),
            expected_cols: action.group_dim(),
        });
    }
    if ladder.len() < 2 {
        return Err(AlgebraError::InvalidParameter {
            name: "ladder",
            reason: format!("need at least 2 damping values, got {}", ladder.len()),
        });
    }
    for &eps in ladder {
        if !eps.is_finite() || eps <= 0.0 {
            return Err(AlgebraError::InvalidParameter {
                name: "ladder",
                reason: format!("damping values must be positive and finite, got {eps}"),
            });
        }
    }
    if !fit_tolerance.is_finite() || fit_tolerance <= 0.0 {
        return Err(AlgebraError::InvalidParameter {
            name: "fit_tolerance",
            reason: format!("must be positive, got {fit_tolerance}"),
        });
    }

    let tau = 2.0 * std::f64::consts::PI;
    let inverse = form.inverse()?;
    let mut probe = Vec::new();
    let mut bmax = 0.0f64;
    for (k, l) in CALIBRATION_PAIRS {
        let u = action.frequency(&k)?;
        let v = action.frequency(&l)?;
        let q = (u.transpose() * &inverse * &v)[(0, 0)];
        if q.abs() < 1e-12 {
            return Err(AlgebraError::DegeneratePairing {
                pair: format!("({k:?}, {l:?})"),
            });
        }
        let b = v * tau;
        bmax = bmax.max(b.iter().fold(0.0f64, |m, x| m.max(x.abs())));
        probe.push((k, l, q, u * tau, b));
    }

    // Damped phases for every pair on every rung of the ladder.
    let mut damped: Vec<Vec<f64>> = vec![Vec::new(); probe.len()];
    for &eps in ladder {
        let params = QuadratureParams {
            damping: eps,
            ..*base
        };
        params.validate(action.group_dim())?;
        let table = GTable::build(
            eps,
            params.half_width,
            w_range(form.matrix(), params.half_width, bmax),
        );
        for (slot, (_, _, _, a, b)) in damped.iter_mut().zip(&probe) {
            let value = pair_integral(a, b, form.matrix(), &params, &table);
            slot.push(value.arg());
        }
    }

    // Anchor winding hypotheses at the smallest damping (most accurate rung).
    let (anchor, _) = ladder
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite dampings"))
        .expect("non-empty ladder");
    let hs: Vec<f64> = ladder.iter().map(|e| e * e).collect();

    let mut pairs = Vec::new();
    for ((k, l, q, _, _), phases) in probe.iter().zip(&damped) {
        let mut best: Option<(f64, f64, i64)> = None;
        for m in -MAX_WINDING..=MAX_WINDING {
            let hypothesis = (phases[anchor] + tau * m as f64) * (1.0 + hs[anchor]);
            let unwrapped: Vec<f64> = phases
                .iter()
                .zip(&hs)
                .map(|(phi, h)| {
                    let predicted = hypothesis / (1.0 + h);
                    let turns = ((predicted - phi) / tau).round();
                    (phi + tau * turns) * (1.0 + h)
                })
                .collect();
            let limit = extrapolate_to_zero(&hs, &unwrapped);
            let residual = unwrapped
                .iter()
                .fold(0.0f64, |worst, v| worst.max((v - limit).abs()));
            if best.map_or(true, |(r, _, _)| residual < r) {
                best = Some((residual, limit, m));
            }
        }
        let (residual, limit_phase, winding) = best.expect("winding search is non-empty");
        if residual > fit_tolerance {
            return Err(AlgebraError::CalibrationFit {
                pair: format!("({k:?}, {l:?})"),
                residual,
                tolerance: fit_tolerance,
            });
        }
        pairs.push(CalibrationPair {
            left: k.to_vec(),
            right: l.to_vec(),
            pairing: *q,
            limit_phase,
            winding,
            residual,
            constant: limit_phase / q,
        });
    }

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut mean = CompensatedSum::new();
    let mut max_residual = 0.0f64;
    for p in &pairs {
        lo = lo.min(p.constant);
        hi = hi.max(p.constant);
        mean.add(p.constant);
        max_residual = max_residual.max(p.residual);
    }
    Ok(PhaseCalibration {
        constant: mean.value() / pairs.len() as f64,
        spread: hi - lo,
        max_residual,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cocycle::PHASE_CONSTANT;

    /// Closed-form value of the damped pairing for the scaled standard form
    /// s·J on ℝ² (full-line integrals; the box at R = 14 is effectively
    /// exact for ε ≥ 0.05):
    ///
    ///   I = (ε²+s²)^{−1} · exp(−ε(|a|²+|b|²)/(4(ε²+s²)))
    ///                    · exp(−i·s·aᵀJb/(2(ε²+s²))).
    fn closed_form(a: &[f64; 2], b: &[f64; 2], s: f64, eps: f64) -> Complex64 {
        let denom = eps * eps + s * s;
        let a2 = a[0] * a[0] + a[1] * a[1];
        let b2 = b[0] * b[0] + b[1] * b[1];
        let ajb = a[0] * b[1] - a[1] * b[0];
        let modulus = (-(eps) * (a2 + b2) / (4.0 * denom)).exp() / denom;
        Complex64::from_polar(modulus, -s * ajb / (2.0 * denom))
    }

    fn scaled_standard(s: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[0.0, s, -s, 0.0])
    }

    #[test]
    fn g_table_matches_full_line_gaussian_transform() {
        // For R ≫ 1/√ε the truncated integral equals the full-line value
        // √(π/ε)·exp(−w²/(4ε)) to high accuracy.
        let eps = 0.2;
        let table = GTable::build(eps, 14.0, 10.0);
        for w in [0.0, 0.37, 1.0, 2.5] {
            let exact = (std::f64::consts::PI / eps).sqrt() * (-w * w / (4.0 * eps)).exp();
            let got = table.eval(w);
            assert!(
                (got - exact).abs() < 1e-6 * exact.max(1.0),
                "w = {w}: got {got}, exact {exact}"
            );
        }
    }

    #[test]
    fn pair_integral_matches_independent_closed_form() {
        let params = QuadratureParams {
            damping: 0.1,
            ..QuadratureParams::default()
        };
        let form = scaled_standard(1.0);
        let a_raw = [2.0 * std::f64::consts::PI, 0.0];
        let b_raw = [0.0, 2.0 * std::f64::consts::PI];
        let table = GTable::build(0.1, params.half_width, w_range(&form, 14.0, 7.0));
        let a = DVector::from_row_slice(&a_raw);
        let b = DVector::from_row_slice(&b_raw);
        let got = pair_integral(&a, &b, &form, &params, &table);
        let exact = closed_form(&a_raw, &b_raw, 1.0, 0.1);
        assert!(
            (got - exact).norm() < 1e-6,
            "got {got}, exact {exact}"
        );
    }

    #[test]
    fn zero_pairing_frequencies_carry_no_phase() {
        // Parallel frequencies have aᵀJb = 0, so the damped pairing is real
        // and positive: no deformation phase at any damping.
        let params = QuadratureParams::default();
        let form = scaled_standard(1.0);
        let tau = 2.0 * std::f64::consts::PI;
        let a = DVector::from_row_slice(&[tau, 0.0]);
        let b = DVector::from_row_slice(&[2.0 * tau, 0.0]);
        let table = GTable::build(params.damping, params.half_width, w_range(&form, 14.0, 13.0));
        let value = pair_integral(&a, &b, &form, &params, &table);
        assert!(value.re > 0.0);
        assert!(value.arg().abs() < 1e-5);
    }

    #[test]
    fn scaling_up_the_form_drives_the_product_classical() {
        // Under J ↦ sJ the damping-corrected pairing amplitude is exactly
        // 1/(ε²+s²) and the unwrapped phase −s·aᵀJ_std·b/(2(ε²+s²)) shrinks
        // like 1/s: the deformation switches off as the form blows up. The
        // phase claim is verified through the closed form (principal
        // arguments wrap for these frequencies); the corrected amplitude —
        // raw amplitude with the Gaussian damping bias divided out — is the
        // directly assertable monotone witness.
        let eps = 0.1;
        let params = QuadratureParams {
            damping: eps,
            half_width: 14.0,
            points: 561,
        };
        let tau = 2.0 * std::f64::consts::PI;
        let a_raw = [tau, 0.0];
        let b_raw = [0.0, tau];
        let a = DVector::from_row_slice(&a_raw);
        let b = DVector::from_row_slice(&b_raw);
        let mut previous_corrected = f64::INFINITY;
        for s in [1.0, 2.0, 4.0] {
            let form = scaled_standard(s);
            let table =
                GTable::build(params.damping, params.half_width, w_range(&form, 14.0, 7.0));
            let got = pair_integral(&a, &b, &form, &params, &table);
            let exact = closed_form(&a_raw, &b_raw, s, eps);
            assert!(
                (got - exact).norm() < 1e-6 / (s * s),
                "s = {s}: got {got}, exact {exact}"
            );
            let denominator = eps * eps + s * s;
            let bias = (eps * (tau * tau + tau * tau) / (4.0 * denominator)).exp();
            let corrected = got.norm() * bias;
            assert!(
                (corrected * denominator - 1.0).abs() < 1e-4,
                "s = {s}: corrected amplitude {corrected}"
            );
            assert!(
                corrected < 0.5 * previous_corrected,
                "corrected amplitude must shrink as s grows"
            );
            previous_corrected = corrected;
        }
    }

    #[test]
    fn quadrature_product_matches_closed_form_per_coefficient() {
        // Two-term inputs: every output coefficient is a weighted damped
        // pairing; compare against the closed form including damping bias.
        let action = CharacterAction::identity(2);
        let params = QuadratureParams {
            damping: 0.2,
            half_width: 14.0,
            points: 421,
        };
        let tau = 2.0 * std::f64::consts::PI;
        let f = TrigPoly::from_terms(
            2,
            [
                (&[1, 0][..], Complex64::new(0.8, -0.3)),
                (&[0, 1][..], Complex64::new(-0.2, 0.5)),
            ],
        )
        .unwrap();
        let g = TrigPoly::character(2, &[1, 1], Complex64::new(0.6, 0.1)).unwrap();
        let form = scaled_standard(1.0);
        let product = deformed_mul_quadrature(&f, &g, &form, &action, &params).unwrap();
        for (k, ck) in f.iter() {
            let sum = [k[0] + 1, k[1] + 1];
            let a = [tau * k[0] as f64, tau * k[1] as f64];
            let b = [tau, tau];
            let expected = ck * g.coeff(&[1, 1]) * closed_form(&a, &b, 1.0, params.damping);
            let got = product.coeff(&sum);
            assert!(
                (got - expected).norm() < 2e-5,
                "k = {k:?}: got {got}, expected {expected}"
            );
        }
    }

    #[test]
    fn calibration_recovers_the_phase_constant() {
        let calibration = calibrate_phase_constant(
            &SkewForm::standard(1),
            &CharacterAction::identity(2),
            &DAMPING_LADDER,
            &QuadratureParams::default(),
            1e-3,
        )
        .unwrap();
        assert_eq!(calibration.pairs.len(), 5);
        assert!(
            (calibration.constant - PHASE_CONSTANT).abs() < 1e-4,
            "constant = {} vs 2π² = {PHASE_CONSTANT}",
            calibration.constant
        );
        assert!(calibration.spread < 1e-3);
        // Pairings with opposite signs both land on the same constant.
        let signs: Vec<f64> = calibration.pairs.iter().map(|p| p.pairing.signum()).collect();
        assert!(signs.contains(&1.0) && signs.contains(&-1.0));
    }

    #[test]
    fn calibration_rejects_a_one_rung_ladder() {
        let err = calibrate_phase_constant(
            &SkewForm::standard(1),
            &CharacterAction::identity(2),
            &[0.1],
            &QuadratureParams::default(),
            1e-3,
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidParameter { .. }));
    }

    #[test]
    fn quadrature_rejects_non_skew_form() {
        let action = CharacterAction::identity(2);
        let f = TrigPoly::constant(2, Complex64::new(1.0, 0.0));
        let form = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -0.5, 0.0]);
        assert!(matches!(
            deformed_mul_quadrature(&f, &f, &form, &action, &QuadratureParams::default()),
            Err(AlgebraError::NotSkew { .. })
        ));
    }
}
