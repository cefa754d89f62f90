//! Polynomial functions on S¹ × SU(2) and their restriction to disk fibers.
//!
//! Writing an SU(2) element as [[z, w], [−w̄, z̄]] with |z|² + |w|² = 1,
//! the function algebra is generated by a circle character u (the S¹
//! factor), the matrix entries z, w, and their conjugates. A monomial is
//!
//!   uᵐ · zᵖ z̄^q · wʳ w̄ˢ,   m ∈ ℤ,  p, q, r, s ≥ 0.
//!
//! The map (u, g) ↦ z fibers S¹ × SU(2) over the closed unit disk. Over an
//! interior point z₀ the level set is a 2-torus — the u-phase and the phase
//! of w, whose modulus is pinned to w₀ = √(1 − |z₀|²) — so restriction sends
//! a monomial to the character (m, r − s) with coefficient z₀ᵖ z̄₀^q w₀^{r+s}.
//! On the boundary circle w collapses to 0 and only the u-phase survives:
//! the fiber is a 1-torus and every monomial with r + s > 0 dies.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::error::ScenarioError;
use crate::algebra::TrigPoly;

/// How far beyond modulus 1 a restriction point may sit (rounding slack).
const DISK_TOL: f64 = 1e-9;

/// Level sets with 1 − |z₀|² at most this are treated as boundary points:
/// below it the pinned modulus w₀ ≤ 1e-6 is numerically indistinguishable
/// from the collapsed boundary fiber.
const BOUNDARY_TOL: f64 = 1e-12;

/// A monomial uᵐ zᵖ z̄^q wʳ w̄ˢ on S¹ × SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Su2Monomial {
    /// Circle character exponent m.
    pub circle: i64,
    /// Exponent of z.
    pub z: u32,
    /// Exponent of z̄.
    pub zbar: u32,
    /// Exponent of w.
    pub w: u32,
    /// Exponent of w̄.
    pub wbar: u32,
}

impl Su2Monomial {
    /// The product monomial (exponents add).
    fn times(&self, other: &Self) -> Self {
        Self {
            circle: self.circle + other.circle,
            z: self.z + other.z,
            zbar: self.zbar + other.zbar,
            w: self.w + other.w,
            wbar: self.wbar + other.wbar,
        }
    }

    /// The conjugate monomial: swaps z ↔ z̄ and w ↔ w̄, flips the circle.
    fn conjugate(&self) -> Self {
        Self {
            circle: -self.circle,
            z: self.zbar,
            zbar: self.z,
            w: self.wbar,
            wbar: self.w,
        }
    }
}

/// A finite complex combination of [`Su2Monomial`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Su2Poly {
    terms: BTreeMap<Su2Monomial, Complex64>,
}

impl Su2Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial.
    pub fn constant(value: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(
            Su2Monomial {
                circle: 0,
                z: 0,
                zbar: 0,
                w: 0,
                wbar: 0,
            },
            value,
        );
        p
    }

    /// A single monomial with coefficient.
    pub fn monomial(mono: Su2Monomial, coeff: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, coeff);
        p
    }

    /// Adds c·(monomial), accumulating and pruning exact zeros.
    pub fn add_term(&mut self, mono: Su2Monomial, c: Complex64) {
        if c == Complex64::ZERO {
            return;
        }
        match self.terms.entry(mono) {
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

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// True when no terms remain.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates terms in monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&Su2Monomial, Complex64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// The (commutative) product: exponents add, coefficients multiply.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    /// Complex conjugation of the function: coefficients conjugate and
    /// every monomial is replaced by its conjugate.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.conjugate(), c.conj());
        }
        out
    }

    /// Scales every coefficient.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * factor);
        }
        out
    }

    /// Coefficientwise sum.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    m: i64,
    p: u32,
    q: u32,
    r: u32,
    s: u32,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Su2Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| TermRepr {
                    m: mono.circle,
                    p: mono.z,
                    q: mono.zbar,
                    r: mono.w,
                    s: mono.wbar,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Su2Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut out = Self::zero();
        for t in repr.terms {
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(D::Error::custom("non-finite coefficient"));
            }
            out.add_term(
                Su2Monomial {
                    circle: t.m,
                    z: t.p,
                    zbar: t.q,
                    w: t.r,
                    wbar: t.s,
                },
                Complex64::new(t.re, t.im),
            );
        }
        Ok(out)
    }
}

/// Restricts a polynomial on S¹ × SU(2) to the fiber over a disk point z₀.
///
/// Interior fibers are 2-tori with characters indexed by (m, r − s); the
/// monomial uᵐ zᵖ z̄^q wʳ w̄ˢ restricts to that character with coefficient
/// c·z₀ᵖ·z̄₀^q·w₀^{r+s}, where w₀ = √(1 − |z₀|²). Boundary fibers (within
/// 1e-12 of |z₀|² = 1) are 1-tori indexed by m alone, and every monomial
/// carrying a power of w or w̄ restricts to zero.
pub fn restrict_su2(f: &Su2Poly, z0: Complex64) -> Result<TrigPoly, ScenarioError> {
    let modulus = z0.norm();
    if modulus > 1.0 + DISK_TOL {
        return Err(ScenarioError::OutsideDisk { modulus });
    }
    let gap = 1.0 - z0.norm_sqr();
    let boundary = gap <= BOUNDARY_TOL;
    let w0 = if boundary { 0.0 } else { gap.sqrt() };
    let dim = if boundary { 1 } else { 2 };
    let mut out = TrigPoly::zero(dim);
    for (mono, c) in f.iter() {
        let radial = w0.powi((mono.w + mono.wbar) as i32);
        if radial == 0.0 && mono.w + mono.wbar > 0 {
            continue;
        }
        let coeff = c * z0.powu(mono.z) * z0.conj().powu(mono.zbar) * radial;
        if boundary {
            out.add_term(&[mono.circle], coeff)
                .map_err(ScenarioError::Algebra)?;
        } else {
            let angular = mono.w as i64 - mono.wbar as i64;
            out.add_term(&[mono.circle, angular], coeff)
                .map_err(ScenarioError::Algebra)?;
        }
    }
    Ok(out)
}
