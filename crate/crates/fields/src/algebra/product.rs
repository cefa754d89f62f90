//! Pointwise and deformed products.

use num_complex::Complex64;

use super::cocycle::PhaseCocycle;
use super::error::AlgebraError;
use super::poly::TrigPoly;

/// The ordinary (commutative) product of torus polynomials: coefficient
/// convolution, (f·g)_m = Σ_{k+l=m} c_k d_l.
pub fn pointwise_mul(f: &TrigPoly, g: &TrigPoly) -> Result<TrigPoly, AlgebraError> {
    if f.dim() != g.dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    let mut out = TrigPoly::zero(f.dim());
    let mut sum = vec![0i64; f.dim()];
    for (k, c) in f.iter() {
        for (l, d) in g.iter() {
            for (s, (a, b)) in sum.iter_mut().zip(k.iter().zip(l)) {
                *s = a + b;
            }
            out.add_term(&sum, c * d)?;
        }
    }
    Ok(out)
}

/// The deformed product f # g: convolution twisted by the phase cocycle,
///
/// ```text
///   (f # g)_m = Σ_{k+l=m} c_k d_l · exp(i·kᵀE l).
/// ```
///
/// When the cocycle is classical (E = 0) this delegates to [`pointwise_mul`]
/// so the results agree bit for bit, not merely up to rounding.
pub fn deformed_mul(
    f: &TrigPoly,
    g: &TrigPoly,
    cocycle: &PhaseCocycle,
) -> Result<TrigPoly, AlgebraError> {
    if f.dim() != g.dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    if f.dim() != cocycle.torus_dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: f.dim(),
            right: cocycle.torus_dim(),
        });
    }
    if cocycle.is_classical() {
        return pointwise_mul(f, g);
    }
    let mut out = TrigPoly::zero(f.dim());
    let mut sum = vec![0i64; f.dim()];
    for (k, c) in f.iter() {
        for (l, d) in g.iter() {
            for (s, (a, b)) in sum.iter_mut().zip(k.iter().zip(l)) {
                *s = a + b;
            }
            let twist = Complex64::cis(cocycle.phase(k, l)?);
            out.add_term(&sum, c * d * twist)?;
        }
    }
    Ok(out)
}
