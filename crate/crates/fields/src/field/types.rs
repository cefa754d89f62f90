//! Data model of covariant fields: base samples, fibers, elements.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::error::FieldError;
use crate::algebra::{CharacterAction, PhaseCocycle, TrigPoly};
use crate::norm::NormBracket;

/// Relative tolerance for matching reciprocal adjacency distances.
const DISTANCE_TOL: f64 = 1e-9;

/// One adjacency edge endpoint with its metric length.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    /// Neighboring sample id.
    pub id: String,
    /// Edge length (positive).
    pub distance: f64,
}

/// One sample point of the base space.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseSample {
    /// Unique sample id.
    pub id: String,
    /// Coordinates in the ambient parameter space.
    pub coords: Vec<f64>,
    /// Adjacent samples with distances (symmetric across the base).
    pub adjacency: Vec<Neighbor>,
}

/// The fiber attached to one sample: a deformed torus algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSpec {
    /// Sample id this fiber sits over.
    pub id: String,
    /// Structure constants of the fiber algebra.
    pub cocycle: PhaseCocycle,
}

/// A named element of the field: one polynomial per fiber.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FiberedElement {
    fibers: BTreeMap<String, TrigPoly>,
}

impl FiberedElement {
    /// Builds an element from explicit per-sample polynomials.
    pub fn new(fibers: BTreeMap<String, TrigPoly>) -> Self {
        Self { fibers }
    }

    /// Inserts or replaces the polynomial at one sample.
    pub fn insert(&mut self, id: impl Into<String>, poly: TrigPoly) {
        self.fibers.insert(id.into(), poly);
    }

    /// The polynomial at a sample.
    pub fn fiber(&self, id: &str) -> Option<&TrigPoly> {
        self.fibers.get(id)
    }

    /// Iterates (id, polynomial) in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &TrigPoly)> {
        self.fibers.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The set of sample ids covered.
    pub fn ids(&self) -> BTreeSet<String> {
        self.fibers.keys().cloned().collect()
    }

    /// Number of fibers.
    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    /// True when no fibers are present.
    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }
}

impl Serialize for FiberedElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.fibers.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiberedElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Self {
            fibers: BTreeMap::deserialize(deserializer)?,
        })
    }
}

/// A scalar function on the base: one complex value per sample. These are
/// the "continuous functions of the base" acting on the field module.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CTFunction {
    values: BTreeMap<String, Complex64>,
}

impl CTFunction {
    /// Builds from explicit per-sample values.
    pub fn new(values: BTreeMap<String, Complex64>) -> Self {
        Self { values }
    }

    /// The constant function 1 on a given sample set.
    pub fn one<I: IntoIterator<Item = String>>(ids: I) -> Self {
        Self {
            values: ids
                .into_iter()
                .map(|id| (id, Complex64::new(1.0, 0.0)))
                .collect(),
        }
    }

    /// The indicator of one sample within a sample set.
    pub fn indicator<I: IntoIterator<Item = String>>(ids: I, on: &str) -> Self {
        Self {
            values: ids
                .into_iter()
                .map(|id| {
                    let v = if id == on {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::ZERO
                    };
                    (id, v)
                })
                .collect(),
        }
    }

    /// Inserts or replaces one value.
    pub fn insert(&mut self, id: impl Into<String>, value: Complex64) {
        self.values.insert(id.into(), value);
    }

    /// The value at a sample.
    pub fn value(&self, id: &str) -> Option<Complex64> {
        self.values.get(id).copied()
    }

    /// Iterates (id, value) in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Complex64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// The set of sample ids covered.
    pub fn ids(&self) -> BTreeSet<String> {
        self.values.keys().cloned().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    re: f64,
    im: f64,
}

impl Serialize for CTFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr: BTreeMap<&String, ComplexRepr> = self
            .values
            .iter()
            .map(|(k, v)| (k, ComplexRepr { re: v.re, im: v.im }))
            .collect();
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CTFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = BTreeMap::<String, ComplexRepr>::deserialize(deserializer)?;
        Ok(Self {
            values: repr
                .into_iter()
                .map(|(k, v)| (k, Complex64::new(v.re, v.im)))
                .collect(),
        })
    }
}

/// Certified norm brackets indexed by sample id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FiberNormProfile {
    brackets: BTreeMap<String, NormBracket>,
}

impl FiberNormProfile {
    /// Builds from explicit per-sample brackets.
    pub fn new(brackets: BTreeMap<String, NormBracket>) -> Self {
        Self { brackets }
    }

    /// The bracket at a sample.
    pub fn bracket(&self, id: &str) -> Option<&NormBracket> {
        self.brackets.get(id)
    }

    /// Iterates (id, bracket) in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &NormBracket)> {
        self.brackets.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The set of sample ids covered.
    pub fn ids(&self) -> BTreeSet<String> {
        self.brackets.keys().cloned().collect()
    }

    /// Number of brackets.
    pub fn len(&self) -> usize {
        self.brackets.len()
    }

    /// True when empty.
    pub fn is_empty(&self) -> bool {
        self.brackets.is_empty()
    }
}

impl Serialize for FiberNormProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.brackets.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiberNormProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Self {
            brackets: BTreeMap::deserialize(deserializer)?,
        })
    }
}

/// A validated covariant field: base samples, one fiber per sample, and
/// named elements complete across all fibers.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantFieldSpec {
    samples: Vec<BaseSample>,
    fibers: BTreeMap<String, PhaseCocycle>,
    elements: BTreeMap<String, FiberedElement>,
    base_dim: usize,
    group_dim: usize,
}

impl CovariantFieldSpec {
    /// Validates and assembles a field specification.
    ///
    /// Checks: unique non-empty sample ids; uniform coordinate dimension;
    /// finite coordinates; symmetric positive adjacency with matching
    /// distances; fiber ids equal to sample ids; one shared group dimension;
    /// every element complete with fiberwise-matching torus dimensions.
    pub fn new(
        mut samples: Vec<BaseSample>,
        fibers: BTreeMap<String, PhaseCocycle>,
        elements: BTreeMap<String, FiberedElement>,
    ) -> Result<Self, FieldError> {
        if samples.is_empty() {
            return Err(FieldError::EmptyBase);
        }
        samples.sort_by(|a, b| a.id.cmp(&b.id));
        let mut ids = BTreeSet::new();
        for s in &samples {
            if s.id.is_empty() {
                return Err(FieldError::InvalidSampleId {
                    id: s.id.clone(),
                    reason: "empty id".into(),
                });
            }
            if !ids.insert(s.id.clone()) {
                return Err(FieldError::InvalidSampleId {
                    id: s.id.clone(),
                    reason: "duplicate id".into(),
                });
            }
        }
        let base_dim = samples[0].coords.len();
        for s in &samples {
            if s.coords.len() != base_dim {
                return Err(FieldError::InvalidSample {
                    id: s.id.clone(),
                    reason: format!(
                        "coordinate dimension {} differs from {}",
                        s.coords.len(),
                        base_dim
                    ),
                });
            }
            if s.coords.iter().any(|c| !c.is_finite()) {
                return Err(FieldError::InvalidSample {
                    id: s.id.clone(),
                    reason: "non-finite coordinate".into(),
                });
            }
        }
        // Adjacency: known targets, no self loops, positive finite
        // distances, no duplicate targets, symmetric with equal lengths.
        let by_id: BTreeMap<&str, &BaseSample> =
            samples.iter().map(|s| (s.id.as_str(), s)).collect();
        for s in &samples {
            let mut seen = BTreeSet::new();
            for n in &s.adjacency {
                if !ids.contains(&n.id) {
                    return Err(FieldError::UnknownNeighbor {
                        id: s.id.clone(),
                        neighbor: n.id.clone(),
                    });
                }
                if n.id == s.id {
                    return Err(FieldError::InvalidSample {
                        id: s.id.clone(),
                        reason: "self loop in adjacency".into(),
                    });
                }
                if !seen.insert(n.id.clone()) {
                    return Err(FieldError::InvalidSample {
                        id: s.id.clone(),
                        reason: format!("duplicate neighbor {:?}", n.id),
                    });
                }
                if !n.distance.is_finite() || n.distance <= 0.0 {
                    return Err(FieldError::InvalidSample {
                        id: s.id.clone(),
                        reason: format!("non-positive distance to {:?}", n.id),
                    });
                }
                let back = by_id[n.id.as_str()]
                    .adjacency
                    .iter()
                    .find(|m| m.id == s.id);
                match back {
                    None => {
                        return Err(FieldError::AsymmetricAdjacency {
                            a: s.id.clone(),
                            b: n.id.clone(),
                            reason: "missing reciprocal edge".into(),
                        })
                    }
                    Some(m) => {
                        if (m.distance - n.distance).abs()
                            > DISTANCE_TOL * (1.0 + n.distance.abs())
                        {
                            return Err(FieldError::AsymmetricAdjacency {
                                a: s.id.clone(),
                                b: n.id.clone(),
                                reason: format!(
                                    "distances {} and {} disagree",
                                    n.distance, m.distance
                                ),
                            });
                        }
                    }
                }
            }
        }
        // Fibers: exactly the sample ids, one shared group dimension.
        let fiber_ids: BTreeSet<String> = fibers.keys().cloned().collect();
        if fiber_ids != ids {
            let missing: Vec<&String> = ids.difference(&fiber_ids).collect();
            let extra: Vec<&String> = fiber_ids.difference(&ids).collect();
            return Err(FieldError::FiberSetMismatch {
                detail: format!("missing fibers {missing:?}, extra fibers {extra:?}"),
            });
        }
        let group_dim = fibers
            .values()
            .next()
            .expect("non-empty fibers")
            .group_dim();
        for (id, cocycle) in &fibers {
            if cocycle.group_dim() != group_dim {
                return Err(FieldError::GroupDimMismatch {
                    id: id.clone(),
                    expected: group_dim,
                    found: cocycle.group_dim(),
                });
            }
        }
        // Elements: complete, with matching torus dimensions.
        for (name, element) in &elements {
            let element_ids = element.ids();
            if element_ids != ids {
                let missing: Vec<&String> = ids.difference(&element_ids).collect();
                let extra: Vec<&String> = element_ids.difference(&ids).collect();
                return Err(FieldError::ElementIncomplete {
                    element: name.clone(),
                    detail: format!("missing samples {missing:?}, extra samples {extra:?}"),
                });
            }
            for (id, poly) in element.iter() {
                let expected = fibers[id].torus_dim();
                if poly.dim() != expected {
                    return Err(FieldError::ElementDimMismatch {
                        element: name.clone(),
                        id: id.to_string(),
                        expected,
                        found: poly.dim(),
                    });
                }
            }
        }
        Ok(Self {
            samples,
            fibers,
            elements,
            base_dim,
            group_dim,
        })
    }

    /// Base coordinate dimension.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Shared acting-group dimension of all fibers.
    pub fn group_dim(&self) -> usize {
        self.group_dim
    }

    /// Samples in id order.
    pub fn samples(&self) -> &[BaseSample] {
        &self.samples
    }

    /// One sample by id.
    pub fn sample(&self, id: &str) -> Option<&BaseSample> {
        self.samples.iter().find(|s| s.id == id)
    }

    /// All sample ids in order.
    pub fn sample_ids(&self) -> Vec<&str> {
        self.samples.iter().map(|s| s.id.as_str()).collect()
    }

    /// The fiber cocycle over a sample.
    pub fn fiber(&self, id: &str) -> Option<&PhaseCocycle> {
        self.fibers.get(id)
    }

    /// Iterates (id, cocycle) in id order.
    pub fn fibers(&self) -> impl Iterator<Item = (&str, &PhaseCocycle)> {
        self.fibers.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// A named element.
    pub fn element(&self, name: &str) -> Option<&FiberedElement> {
        self.elements.get(name)
    }

    /// All element names in order.
    pub fn element_names(&self) -> Vec<&str> {
        self.elements.keys().map(|k| k.as_str()).collect()
    }

    /// Deduplicated adjacency edges (a < b in id order) with distances.
    pub fn edges(&self) -> Vec<(String, String, f64)> {
        let mut out = Vec::new();
        for s in &self.samples {
            for n in &s.adjacency {
                if s.id < n.id {
                    out.push((s.id.clone(), n.id.clone(), n.distance));
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct NeighborRepr {
    id: String,
    dist: f64,
}

#[derive(Serialize, Deserialize)]
struct SampleRepr {
    id: String,
    coords: Vec<f64>,
    adj: Vec<NeighborRepr>,
}

#[derive(Serialize, Deserialize)]
struct BaseRepr {
    samples: Vec<SampleRepr>,
}

#[derive(Serialize, Deserialize)]
struct FiberRepr {
    id: String,
    #[serde(rename = "M")]
    m: Vec<Vec<f64>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    base: BaseRepr,
    fibers: Vec<FiberRepr>,
    elements: BTreeMap<String, FiberedElement>,
}

fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn rows_to_matrix(rows: &[Vec<f64>], what: &str) -> Result<DMatrix<f64>, String> {
    if rows.is_empty() {
        return Err(format!("{what} matrix has no rows"));
    }
    let cols = rows[0].len();
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(format!("{what} matrix rows have inconsistent lengths"));
    }
    let mut m = DMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    Ok(m)
}

impl Serialize for CovariantFieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = SpecRepr {
            base: BaseRepr {
                samples: self
                    .samples
                    .iter()
                    .map(|s| SampleRepr {
                        id: s.id.clone(),
                        coords: s.coords.clone(),
                        adj: s
                            .adjacency
                            .iter()
                            .map(|n| NeighborRepr {
                                id: n.id.clone(),
                                dist: n.distance,
                            })
                            .collect(),
                    })
                    .collect(),
            },
            fibers: self
                .fibers
                .iter()
                .map(|(id, cocycle)| {
                    let b = cocycle.deformation_matrix();
                    FiberRepr {
                        id: id.clone(),
                        m: matrix_to_rows(cocycle.action().matrix()),
                        b: if b.iter().all(|x| *x == 0.0) {
                            None
                        } else {
                            Some(matrix_to_rows(b))
                        },
                    }
                })
                .collect(),
            elements: self.elements.clone(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CovariantFieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SpecRepr::deserialize(deserializer)?;
        let samples: Vec<BaseSample> = repr
            .base
            .samples
            .into_iter()
            .map(|s| BaseSample {
                id: s.id,
                coords: s.coords,
                adjacency: s
                    .adj
                    .into_iter()
                    .map(|n| Neighbor {
                        id: n.id,
                        distance: n.dist,
                    })
                    .collect(),
            })
            .collect();
        let mut fibers = BTreeMap::new();
        for f in repr.fibers {
            let m = rows_to_matrix(&f.m, "action").map_err(D::Error::custom)?;
            let action = CharacterAction::new(m).map_err(D::Error::custom)?;
            let cocycle = match f.b {
                None => PhaseCocycle::classical(action),
                Some(rows) => {
                    let b = rows_to_matrix(&rows, "deformation").map_err(D::Error::custom)?;
                    PhaseCocycle::from_deformation_matrix(b, action)
                        .map_err(D::Error::custom)?
                }
            };
            if fibers.insert(f.id.clone(), cocycle).is_some() {
                return Err(D::Error::custom(format!("duplicate fiber id {:?}", f.id)));
            }
        }
        CovariantFieldSpec::new(samples, fibers, repr.elements).map_err(D::Error::custom)
    }
}
