//! Process-level failure policy.
//!
//! Every failure is classified into one of three exit classes and reported
//! as a single machine-readable JSON object on stderr:
//!
//! * exit 1 — unreadable, unparsable, or semantically invalid input;
//! * exit 2 — a numerical guard tripped (support blow-up in the power
//!   bound, a section too large to represent, a calibration that failed
//!   to converge);
//! * exit 3 — a check suite ran to completion and found violations.

use rieffel_fields::{AlgebraError, FieldError, NormError, ScenarioError};

/// A classified command failure carrying the user-facing message.
#[derive(Debug)]
pub enum CliError {
    /// Bad paths, malformed JSON, or inputs that fail validation (exit 1).
    Invalid(String),
    /// A resource or convergence guard stopped the computation (exit 2).
    Numerical(String),
    /// Checks executed but did not hold (exit 3).
    Assertion(String),
}

impl CliError {
    /// Invalid-input failure with a custom message.
    pub fn invalid(message: impl Into<String>) -> Self {
        Self::Invalid(message.into())
    }

    /// Failed-assertion-suite failure with a custom message.
    pub fn assertion(message: impl Into<String>) -> Self {
        Self::Assertion(message.into())
    }

    /// Stable identifier of the failure class.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Invalid(_) => "invalid-input",
            Self::Numerical(_) => "numerical-guard",
            Self::Assertion(_) => "assertion-failure",
        }
    }

    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Invalid(_) => 1,
            Self::Numerical(_) => 2,
            Self::Assertion(_) => 3,
        }
    }

    /// The human-readable message.
    pub fn message(&self) -> &str {
        match self {
            Self::Invalid(m) | Self::Numerical(m) | Self::Assertion(m) => m,
        }
    }

    /// The machine-readable stderr line.
    pub fn stderr_json(&self) -> String {
        serde_json::json!({
            "error": {
                "kind": self.kind(),
                "message": self.message(),
                "exit": self.exit_code(),
            }
        })
        .to_string()
    }
}

/// Whether an algebra failure is a tripped guard rather than bad input.
fn algebra_is_guard(e: &AlgebraError) -> bool {
    matches!(e, AlgebraError::CalibrationFit { .. })
}

/// Whether a norm failure is a tripped guard rather than bad input.
fn norm_is_guard(e: &NormError) -> bool {
    match e {
        NormError::SupportCapExceeded { .. } | NormError::SectionTooLarge { .. } => true,
        NormError::Algebra(inner) => algebra_is_guard(inner),
        _ => false,
    }
}

/// Whether a field failure is a tripped guard rather than bad input.
fn field_is_guard(e: &FieldError) -> bool {
    match e {
        FieldError::Algebra(inner) => algebra_is_guard(inner),
        FieldError::Norm(inner) => norm_is_guard(inner),
        FieldError::FiberNorm { source, .. } => norm_is_guard(source),
        _ => false,
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        if algebra_is_guard(&e) {
            Self::Numerical(e.to_string())
        } else {
            Self::Invalid(e.to_string())
        }
    }
}

impl From<NormError> for CliError {
    fn from(e: NormError) -> Self {
        if norm_is_guard(&e) {
            Self::Numerical(e.to_string())
        } else {
            Self::Invalid(e.to_string())
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        if field_is_guard(&e) {
            Self::Numerical(e.to_string())
        } else {
            Self::Invalid(e.to_string())
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        let guard = match &e {
            ScenarioError::Algebra(inner) => algebra_is_guard(inner),
            ScenarioError::Field(inner) => field_is_guard(inner),
            _ => false,
        };
        if guard {
            Self::Numerical(e.to_string())
        } else {
            Self::Invalid(e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_failure_class() {
        assert_eq!(CliError::invalid("x").exit_code(), 1);
        assert_eq!(CliError::Numerical("x".into()).exit_code(), 2);
        assert_eq!(CliError::assertion("x").exit_code(), 3);
    }

    #[test]
    fn support_blowup_is_a_numerical_guard() {
        let e = NormError::SupportCapExceeded {
            count: 30_000,
            cap: 20_000,
            doublings: 2,
        };
        assert!(matches!(CliError::from(e), CliError::Numerical(_)));
    }

    #[test]
    fn bad_dimension_is_invalid_input() {
        let e = AlgebraError::DimensionMismatch { left: 1, right: 2 };
        let err = CliError::from(e);
        assert!(matches!(err, CliError::Invalid(_)));
        assert_eq!(err.kind(), "invalid-input");
    }

    #[test]
    fn stderr_line_is_one_json_object() {
        let line = CliError::assertion("covariance residual 2e-3").stderr_json();
        let parsed: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(parsed["error"]["exit"], 3);
        assert_eq!(parsed["error"]["kind"], "assertion-failure");
    }
}
