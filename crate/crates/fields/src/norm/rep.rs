//! Finite sections of the twisted left regular representation.
//!
//! The deformed algebra acts on ℓ²(ℤᵈ) by twisted translations: the
//! character e_k acts as (λ(k)ξ)(m) = c(k, m−k)·ξ(m−k). Compressing λ(f) to
//! the coordinates in a box [−N, N]ᵈ gives a finite matrix
//!
//! ```text
//!   A[m, m′] = c_{m−m′} · c(m−m′, m′),    m, m′ ∈ [−N, N]ᵈ,
//! ```
//!
//! whose largest singular value is a certified lower bound for ‖f‖ (a
//! compression never increases the operator norm). The phase of each term
//! is separable across axes — c(k, m′) = exp(i·(Eᵀk)·m′) — so applying the
//! section costs O(terms · boxsize) with per-axis phase tables.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::error::NormError;
use super::lanczos::ComplexOperator;
use crate::algebra::{PhaseCocycle, TrigPoly};

/// Hard cap on the section dimension (memory guard for the iterative path,
/// which stores the full orthonormal bases for reorthogonalization).
pub(crate) const MAX_SECTION_DIM: usize = 200_000;

/// Hard cap on the dense matrix dimension for [`rep_matrix`].
const MAX_DENSE_DIM: usize = 4096;

struct Term {
    coeff: Complex64,
    shift: Vec<i64>,
    /// axis_phases[j][p] = exp(i·(Eᵀk)_j·(p − N)) for p in 0..side.
    axis_phases: Vec<Vec<Complex64>>,
}

/// Matrix-free application of the boxed section of λ(f).
pub struct SectionOperator {
    torus_dim: usize,
    radius: i64,
    dim: usize,
    strides: Vec<usize>,
    terms: Vec<Term>,
    adjoint_terms: Vec<Term>,
}

impl SectionOperator {
    /// Builds the section of λ(f) on the box [−radius, radius]ᵈ. The
    /// adjoint action is realized as the section of λ(f*), which equals the
    /// conjugate transpose because the cocycle phase is skew.
    pub fn new(
        f: &TrigPoly,
        cocycle: &PhaseCocycle,
        radius: i64,
    ) -> Result<Self, NormError> {
        if f.dim() != cocycle.torus_dim() {
            return Err(NormError::InvalidParameter {
                name: "f",
                reason: format!(
                    "polynomial dimension {} does not match cocycle torus dimension {}",
                    f.dim(),
                    cocycle.torus_dim()
                ),
            });
        }
        if radius < 0 {
            return Err(NormError::InvalidParameter {
                name: "radius",
                reason: format!("box radius must be non-negative, got {radius}"),
            });
        }
        let d = f.dim();
        let side = 2 * radius as usize + 1;
        let mut dim = 1usize;
        for _ in 0..d {
            dim = dim
                .checked_mul(side)
                .filter(|v| *v <= MAX_SECTION_DIM)
                .ok_or(NormError::SectionTooLarge {
                    dim: usize::MAX,
                    limit: MAX_SECTION_DIM,
                })?;
        }
        if f.support_radius() > radius {
            log::warn!(
                "section box radius {radius} is smaller than the support radius {} of the \
                 polynomial; the lower bound will be weak",
                f.support_radius()
            );
        }
        let mut strides = vec![1usize; d];
        for j in (0..d.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * side;
        }
        let terms = build_terms(f, cocycle, radius, side)?;
        let adjoint_terms = build_terms(&f.involution(), cocycle, radius, side)?;
        Ok(Self {
            torus_dim: d,
            radius,
            dim,
            strides,
            terms,
            adjoint_terms,
        })
    }

    /// Box radius N.
    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Section dimension (2N+1)ᵈ.
    pub fn section_dim(&self) -> usize {
        self.dim
    }

    fn apply_terms(&self, terms: &[Term], x: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        out.fill(Complex64::ZERO);
        let n = self.radius;
        'term: for term in terms {
            // Valid source coordinates: m′ and m′ + k both inside the box.
            let mut lo = Vec::with_capacity(self.torus_dim);
            let mut hi = Vec::with_capacity(self.torus_dim);
            let mut offset = 0isize;
            let mut empty = false;
            for (j, &kj) in term.shift.iter().enumerate() {
                let l = (-n).max(-n - kj);
                let h = n.min(n - kj);
                if l > h {
                    empty = true;
                    break;
                }
                lo.push(l);
                hi.push(h);
                offset += kj as isize * self.strides[j] as isize;
            }
            if empty {
                continue;
            }
            let mut coord = lo.clone();
            let mut src: usize = coord
                .iter()
                .enumerate()
                .map(|(j, &c)| (c + n) as usize * self.strides[j])
                .sum();
            loop {
                let mut phase = term.coeff;
                for (j, &c) in coord.iter().enumerate() {
                    phase *= term.axis_phases[j][(c + n) as usize];
                }
                let dst = (src as isize + offset) as usize;
                out[dst] += phase * x[src];
                // Odometer from the last axis (stride 1) upward.
                let mut axis = self.torus_dim;
                loop {
                    if axis == 0 {
                        continue 'term;
                    }
                    axis -= 1;
                    coord[axis] += 1;
                    src += self.strides[axis];
                    if coord[axis] <= hi[axis] {
                        break;
                    }
                    src -= (coord[axis] - lo[axis]) as usize * self.strides[axis];
                    coord[axis] = lo[axis];
                }
            }
        }
    }
}

impl ComplexOperator for SectionOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[Complex64], out: &mut [Complex64]) {
        self.apply_terms(&self.terms, x, out);
    }

    fn apply_adjoint(&self, x: &[Complex64], out: &mut [Complex64]) {
        self.apply_terms(&self.adjoint_terms, x, out);
    }
}

fn build_terms(
    f: &TrigPoly,
    cocycle: &PhaseCocycle,
    radius: i64,
    side: usize,
) -> Result<Vec<Term>, NormError> {
    let d = f.dim();
    let e = cocycle.lattice_phase_matrix();
    let mut terms = Vec::with_capacity(f.term_count());
    for (k, c) in f.iter() {
        // w = Eᵀk: the per-axis angular rates of c(k, m′) = exp(i·w·m′).
        let mut w = vec![0.0f64; d];
        for (j, wj) in w.iter_mut().enumerate() {
            for (i, &ki) in k.iter().enumerate() {
                *wj += e[(i, j)] * ki as f64;
            }
        }
        let axis_phases: Vec<Vec<Complex64>> = w
            .iter()
            .map(|&wj| {
                (0..side)
                    .map(|p| Complex64::cis(wj * (p as i64 - radius) as f64))
                    .collect()
            })
            .collect();
        terms.push(Term {
            coeff: c,
            shift: k.to_vec(),
            axis_phases,
        });
    }
    Ok(terms)
}

/// Dense section matrix A[m, m′] = c_{m−m′}·c(m−m′, m′) on [−radius,
/// radius]ᵈ, for small boxes.
pub fn rep_matrix(
    f: &TrigPoly,
    cocycle: &PhaseCocycle,
    radius: i64,
) -> Result<DMatrix<Complex64>, NormError> {
    let op = SectionOperator::new(f, cocycle, radius)?;
    if op.dim > MAX_DENSE_DIM {
        return Err(NormError::SectionTooLarge {
            dim: op.dim,
            limit: MAX_DENSE_DIM,
        });
    }
    let mut matrix = DMatrix::zeros(op.dim, op.dim);
    let mut basis = vec![Complex64::ZERO; op.dim];
    let mut column = vec![Complex64::ZERO; op.dim];
    for j in 0..op.dim {
        basis[j] = Complex64::new(1.0, 0.0);
        op.apply(&basis, &mut column);
        for (i, v) in column.iter().enumerate() {
            matrix[(i, j)] = *v;
        }
        basis[j] = Complex64::ZERO;
    }
    Ok(matrix)
}
