//! Two-sided norm estimates with provenance.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use super::error::NormError;

/// Rounding slack allowed when a mathematically-equal pair of bounds lands
/// in the wrong order by floating point noise.
const ORDER_SLACK: f64 = 1e-9;

/// A certified bracket lower ≤ ‖f‖ ≤ upper, together with the method that
/// produced each side and the parameters it ran with.
///
/// Construction enforces 0 ≤ lower ≤ upper (up to rounding slack, which is
/// clamped); a violation beyond slack is an error, never silently repaired.
#[derive(Debug, Clone, PartialEq)]
pub struct NormBracket {
    lower: f64,
    upper: f64,
    lower_method: String,
    upper_method: String,
    params: Map<String, Value>,
}

impl NormBracket {
    /// Builds a bracket, validating finiteness and order.
    pub fn new(
        lower: f64,
        upper: f64,
        lower_method: impl Into<String>,
        upper_method: impl Into<String>,
        params: Map<String, Value>,
    ) -> Result<Self, NormError> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(NormError::NonFinite {
                context: "norm bracket bounds",
            });
        }
        let lower = lower.max(0.0);
        let upper = upper.max(0.0);
        if lower > upper {
            if lower - upper > ORDER_SLACK * (1.0 + upper) {
                return Err(NormError::InvalidBracket { lower, upper });
            }
            // Equal bounds disagreeing at rounding level: collapse downward.
            return Ok(Self {
                lower: upper,
                upper,
                lower_method: lower_method.into(),
                upper_method: upper_method.into(),
                params,
            });
        }
        Ok(Self {
            lower,
            upper,
            lower_method: lower_method.into(),
            upper_method: upper_method.into(),
            params,
        })
    }

    /// Certified lower bound.
    pub fn lower(&self) -> f64 {
        self.lower
    }

    /// Certified upper bound.
    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Bracket width upper − lower.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Bracket midpoint (upper + lower)/2.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.upper + self.lower)
    }

    /// How the lower bound was computed.
    pub fn lower_method(&self) -> &str {
        &self.lower_method
    }

    /// How the upper bound was computed.
    pub fn upper_method(&self) -> &str {
        &self.upper_method
    }

    /// Method parameters (sorted keys; serializes deterministically).
    pub fn params(&self) -> &Map<String, Value> {
        &self.params
    }

    /// True when x lies inside the bracket.
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// True when the two brackets intersect.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// Certified distance between the intervals: 0 when they overlap, the
    /// gap between the nearer endpoints otherwise. A positive value proves
    /// the two underlying norms differ by at least that much.
    pub fn gap(&self, other: &Self) -> f64 {
        (self.lower - other.upper).max(other.lower - self.upper).max(0.0)
    }
}

#[derive(Serialize, Deserialize)]
struct BracketRepr {
    lower: f64,
    upper: f64,
    lower_method: String,
    upper_method: String,
    params: Map<String, Value>,
}

impl Serialize for NormBracket {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BracketRepr {
            lower: self.lower,
            upper: self.upper,
            lower_method: self.lower_method.clone(),
            upper_method: self.upper_method.clone(),
            params: self.params.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormBracket {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = BracketRepr::deserialize(deserializer)?;
        NormBracket::new(
            repr.lower,
            repr.upper,
            repr.lower_method,
            repr.upper_method,
            repr.params,
        )
        .map_err(D::Error::custom)
    }
}

/// Convenience builder for the params map from literal pairs.
pub(crate) fn params_from(pairs: &[(&str, Value)]) -> Map<String, Value> {
    let mut map = Map::new();
    for (key, value) in pairs {
        map.insert((*key).to_string(), value.clone());
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bracket(lo: f64, hi: f64) -> NormBracket {
        NormBracket::new(lo, hi, "test-lower", "test-upper", Map::new()).unwrap()
    }

    #[test]
    fn rejects_inverted_bounds_beyond_slack() {
        let err = NormBracket::new(2.0, 1.0, "a", "b", Map::new()).unwrap_err();
        assert!(matches!(err, NormError::InvalidBracket { .. }));
    }

    #[test]
    fn clamps_rounding_level_inversion() {
        let b = NormBracket::new(1.0 + 1e-12, 1.0, "a", "b", Map::new()).unwrap();
        assert_eq!(b.lower(), b.upper());
        assert_eq!(b.upper(), 1.0);
    }

    #[test]
    fn negative_lower_bound_clamps_to_zero() {
        let b = NormBracket::new(-0.5, 1.0, "a", "b", Map::new()).unwrap();
        assert_eq!(b.lower(), 0.0);
    }

    #[test]
    fn gap_and_overlap_are_consistent() {
        let a = bracket(1.0, 2.0);
        let b = bracket(2.5, 3.0);
        let c = bracket(1.5, 2.7);
        assert!(!a.overlaps(&b));
        assert!((a.gap(&b) - 0.5).abs() < 1e-15);
        assert_eq!(b.gap(&a), a.gap(&b));
        assert!(a.overlaps(&c) && c.overlaps(&a));
        assert_eq!(a.gap(&c), 0.0);
        assert!(a.contains(1.0) && a.contains(2.0) && !a.contains(2.1));
    }

    #[test]
    fn midpoint_and_width_are_the_usual_interval_stats() {
        let b = bracket(1.0, 3.0);
        assert_eq!(b.midpoint(), 2.0);
        assert_eq!(b.width(), 2.0);
    }

    #[test]
    fn json_round_trip_preserves_everything() {
        let params = params_from(&[("grid", Value::from(64)), ("doublings", Value::from(3))]);
        let b = NormBracket::new(1.25, 1.5, "dense-svd", "power-l1", params).unwrap();
        let text = serde_json::to_string(&b).unwrap();
        let back: NormBracket = serde_json::from_str(&text).unwrap();
        assert_eq!(back, b);
        // Keys serialize sorted, so encoding is stable.
        assert!(text.find("\"doublings\"").unwrap() < text.find("\"grid\"").unwrap());
    }

    #[test]
    fn json_rejects_invalid_bracket() {
        let text = r#"{"lower":5.0,"upper":1.0,"lower_method":"a","upper_method":"b","params":{}}"#;
        assert!(serde_json::from_str::<NormBracket>(text).is_err());
    }
}
