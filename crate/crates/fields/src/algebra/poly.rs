//! Sparse trigonometric polynomials on the d-torus.
//!
//! An element is a finite sum f = Σ_k c_k e_k over lattice frequencies
//! k ∈ ℤᵈ, where e_k(σ) = exp(2πi k·σ) for σ ∈ 𝕋ᵈ = ℝᵈ/ℤᵈ. Coefficients
//! live in a sorted map keyed by the lattice point, so iteration order — and
//! therefore every downstream serialization and floating-point reduction —
//! is deterministic.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::error::AlgebraError;
use crate::numeric::CompensatedSum;

/// A finite Fourier sum Σ_k c_k e_k on 𝕋ᵈ with complex coefficients.
///
/// Exact zero coefficients are pruned on insertion, so two polynomials are
/// equal as maps iff they are equal term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    dim: usize,
    terms: BTreeMap<Vec<i64>, Complex64>,
}

impl TrigPoly {
    /// The zero polynomial on 𝕋ᵈ.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial c·e_0.
    pub fn constant(dim: usize, value: Complex64) -> Self {
        let mut p = Self::zero(dim);
        p.insert(vec![0; dim], value);
        p
    }

    /// A single character c·e_k.
    pub fn character(dim: usize, k: &[i64], value: Complex64) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(dim);
        p.add_term(k, value)?;
        Ok(p)
    }

    /// Builds a polynomial from (frequency, coefficient) pairs, accumulating
    /// duplicates.
    pub fn from_terms<'a, I>(dim: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (&'a [i64], Complex64)>,
    {
        let mut p = Self::zero(dim);
        for (k, c) in terms {
            p.add_term(k, c)?;
        }
        Ok(p)
    }

    /// Adds c·e_k to the polynomial, accumulating onto an existing term and
    /// pruning the result if it cancels to exactly zero.
    pub fn add_term(&mut self, k: &[i64], c: Complex64) -> Result<(), AlgebraError> {
        if k.len() != self.dim {
            return Err(AlgebraError::IndexDimension {
                expected: self.dim,
                found: k.len(),
            });
        }
        self.insert(k.to_vec(), c);
        Ok(())
    }

    fn insert(&mut self, k: Vec<i64>, c: Complex64) {
        if c == Complex64::ZERO {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let updated = *e.get() + c;
                if updated == Complex64::ZERO {
                    e.remove();
                } else {
                    *e.get_mut() = updated;
                }
            }
        }
    }

    /// Torus dimension d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// True when the polynomial has no nonzero terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of e_k (zero when absent).
    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        self.terms.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    /// Iterates terms in lattice (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&[i64], Complex64)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), *c))
    }

    /// Largest |k_j| over the support (0 for the zero polynomial).
    pub fn support_radius(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// ℓ¹ norm of the coefficients, Σ_k |c_k|.
    pub fn l1_norm(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for c in self.terms.values() {
            acc.add(c.norm());
        }
        acc.value()
    }

    /// Frequency-weighted ℓ¹ norm, Σ_k |c_k|·|k|₁.
    pub fn weighted_l1_norm(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for (k, c) in &self.terms {
            let k1: i64 = k.iter().map(|x| x.abs()).sum();
            acc.add(c.norm() * k1 as f64);
        }
        acc.value()
    }

    /// Evaluates the polynomial at σ ∈ 𝕋ᵈ (coordinates in [0,1)).
    pub fn eval(&self, point: &[f64]) -> Result<Complex64, AlgebraError> {
        if point.len() != self.dim {
            return Err(AlgebraError::IndexDimension {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut acc = Complex64::ZERO;
        for (k, c) in &self.terms {
            let dot: f64 = k.iter().zip(point).map(|(ki, xi)| *ki as f64 * xi).sum();
            acc += c * Complex64::cis(2.0 * std::f64::consts::PI * dot);
        }
        Ok(acc)
    }

    /// The involution f ↦ f*: coefficients c_k ↦ conj(c_{−k}).
    pub fn involution(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.terms {
            let neg: Vec<i64> = k.iter().map(|x| -x).collect();
            out.insert(neg, c.conj());
        }
        out
    }

    /// Scales every coefficient by a complex factor.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.terms {
            out.insert(k.clone(), c * factor);
        }
        out
    }

    /// Coefficientwise sum.
    pub fn plus(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), *c);
        }
        Ok(out)
    }

    /// Coefficientwise difference.
    pub fn minus(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), -*c);
        }
        Ok(out)
    }

    /// Largest coefficient deviation max_k |a_k − b_k| over the union of
    /// supports. This is the residual metric used by all algebraic checks.
    pub fn max_coeff_distance(&self, other: &Self) -> Result<f64, AlgebraError> {
        self.check_dim(other)?;
        let mut worst = 0.0f64;
        for (k, c) in &self.terms {
            worst = worst.max((c - other.coeff(k)).norm());
        }
        for (k, c) in &other.terms {
            if !self.terms.contains_key(k) {
                worst = worst.max(c.norm());
            }
        }
        Ok(worst)
    }

    /// Grid estimate of the sup norm: the exact maximum of |f| over the
    /// uniform G^d grid, plus a Lipschitz certificate 2π·Σ|c_k||k|₁/G that
    /// bounds how much the true supremum can exceed the grid maximum.
    pub fn grid_sup_estimate(&self, grid: usize) -> Result<(f64, f64), AlgebraError> {
        if grid == 0 {
            return Err(AlgebraError::InvalidParameter {
                name: "grid",
                reason: "grid resolution must be at least 1".into(),
            });
        }
        if self.is_zero() {
            return Ok((0.0, 0.0));
        }
        let d = self.dim;
        let mut index = vec![0usize; d];
        let mut point = vec![0.0f64; d];
        let mut best = 0.0f64;
        loop {
            for (p, i) in point.iter_mut().zip(&index) {
                *p = *i as f64 / grid as f64;
            }
            let v = self.eval(&point)?.norm();
            if v > best {
                best = v;
            }
            // Odometer increment over the d-dimensional grid.
            let mut axis = 0;
            loop {
                if axis == d {
                    let certificate =
                        2.0 * std::f64::consts::PI * self.weighted_l1_norm() / grid as f64;
                    return Ok((best, certificate));
                }
                index[axis] += 1;
                if index[axis] < grid {
                    break;
                }
                index[axis] = 0;
                axis += 1;
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: Vec<i64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for TrigPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermRepr {
                    k: k.clone(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TrigPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut poly = TrigPoly::zero(repr.dim);
        for term in repr.terms {
            let c = Complex64::new(term.re, term.im);
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(D::Error::custom("non-finite coefficient"));
            }
            poly.add_term(&term.k, c).map_err(D::Error::custom)?;
        }
        Ok(poly)
    }
}
