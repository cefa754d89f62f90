//! File formats and deterministic text rendering.
//!
//! All artifacts are byte-stable for a fixed configuration: JSON objects
//! serialize with sorted keys (serde_json's default map is ordered), CSV
//! rows follow the lexicographic sample order of the field spec, and every
//! floating-point cell is rendered in scientific notation with twelve
//! significant digits.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde::Serialize;

use rieffel_fields::{
    build_cocycle, CharacterAction, CovariantFieldSpec, FiberNormProfile, PhaseCocycle, SkewForm,
    Su2Poly, TrigPoly,
};

use crate::error::CliError;

/// Reads and parses a JSON file, attaching the path to any failure.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("parsing {}: {e}", path.display())))
}

/// Renders a value as pretty JSON with a trailing newline.
pub fn to_pretty_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::invalid(format!("serializing output: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Writes text to a file, or to stdout when no path is given.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::invalid(format!("writing {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| CliError::invalid(format!("writing stdout: {e}")))
        }
    }
}

/// Builds a dense matrix from JSON rows, requiring a nonempty rectangle.
pub fn matrix_from_rows(rows: &[Vec<f64>], name: &str) -> Result<DMatrix<f64>, CliError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(CliError::invalid(format!("{name}: matrix must be nonempty")));
    }
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(CliError::invalid(format!("{name}: rows have unequal lengths")));
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    Ok(DMatrix::from_row_slice(nrows, ncols, &flat))
}

/// A single fiber given as a frequency matrix M and an optional group-side
/// deformation matrix B; `"B": null` (or an absent B) selects the classical
/// fiber.
#[derive(Debug, Deserialize)]
pub struct FiberConfig {
    #[serde(rename = "M")]
    pub frequency: Vec<Vec<f64>>,
    #[serde(rename = "B", default)]
    pub deformation: Option<Vec<Vec<f64>>>,
}

impl FiberConfig {
    /// The phase cocycle this fiber denotes.
    pub fn cocycle(&self) -> Result<PhaseCocycle, CliError> {
        let action = CharacterAction::new(matrix_from_rows(&self.frequency, "fiber M")?)?;
        match &self.deformation {
            Some(rows) => {
                let b = matrix_from_rows(rows, "fiber B")?;
                Ok(PhaseCocycle::from_deformation_matrix(b, action)?)
            }
            None => Ok(PhaseCocycle::classical(action)),
        }
    }
}

/// The default cocycle for bare polynomial commands: the standard skew form
/// on ℝᵈ (d even) under the identity frequency matrix, scaled by κ.
pub fn standard_cocycle(dim: usize, kappa: f64) -> Result<PhaseCocycle, CliError> {
    if dim % 2 != 0 {
        return Err(CliError::invalid(format!(
            "torus dimension {dim} is odd; pass --fiber to choose the deformation explicitly"
        )));
    }
    let form = SkewForm::standard(dim / 2);
    let action = CharacterAction::identity(dim);
    Ok(build_cocycle(&form, &action, kappa)?)
}

/// Scientific notation with twelve significant digits; the one float format
/// used in all CSV cells.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders a fiberwise norm profile as CSV: a `#`-prefixed reproducibility
/// header recording the command and every numeric parameter, then one row
/// per sample in lexicographic id order.
pub fn profile_csv(
    command: &str,
    params: &[(&str, String)],
    spec: &CovariantFieldSpec,
    profile: &FiberNormProfile,
) -> Result<String, CliError> {
    let mut out = String::new();
    out.push_str(&format!(
        "# rieffel-fields {} profile\n",
        env!("CARGO_PKG_VERSION")
    ));
    out.push_str(&format!("# command = {command}\n"));
    for (key, value) in params {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out.push_str("id");
    for axis in 0..spec.base_dim() {
        out.push_str(&format!(",coord{axis}"));
    }
    out.push_str(",norm_lower,norm_upper,lower_method,upper_method\n");
    for sample in spec.samples() {
        let bracket = profile.bracket(&sample.id).ok_or_else(|| {
            CliError::invalid(format!("profile is missing sample {:?}", sample.id))
        })?;
        out.push_str(&sample.id);
        for coord in &sample.coords {
            out.push(',');
            out.push_str(&fmt_sig(*coord));
        }
        out.push_str(&format!(
            ",{},{},{},{}\n",
            fmt_sig(bracket.lower()),
            fmt_sig(bracket.upper()),
            bracket.lower_method(),
            bracket.upper_method()
        ));
    }
    Ok(out)
}

/// Config for the rotation-angle family: one fiber per θ.
#[derive(Debug, Deserialize)]
pub struct RotationConfig {
    pub element: TrigPoly,
    pub thetas: Vec<f64>,
}

/// Config for the semiclassical family: B(ℏ) scales a fixed base form.
#[derive(Debug, Deserialize)]
pub struct HbarConfig {
    pub element: TrigPoly,
    pub action: Vec<Vec<f64>>,
    pub scale_form: Vec<Vec<f64>>,
    pub hbars: Vec<f64>,
}

/// Config for the disk-base family restricted from 𝕋 × S³.
#[derive(Debug, Deserialize)]
pub struct DiskConfig {
    pub poly: Su2Poly,
    pub radial: usize,
    pub angular: usize,
    pub form: Vec<Vec<f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits_everywhere() {
        assert_eq!(fmt_sig(1.0), "1.00000000000e0");
        assert_eq!(fmt_sig(2.0f64.sqrt()), "1.41421356237e0");
        assert_eq!(fmt_sig(-0.03125), "-3.12500000000e-2");
        assert_eq!(fmt_sig(0.0), "0.00000000000e0");
    }

    #[test]
    fn fiber_without_deformation_is_classical() {
        let config: FiberConfig =
            serde_json::from_str(r#"{"M": [[1.0, 0.0], [0.0, 1.0]], "B": null}"#).unwrap();
        let cocycle = config.cocycle().unwrap();
        assert!(cocycle.is_classical());
    }

    #[test]
    fn ragged_matrix_is_rejected() {
        let rows = vec![vec![1.0, 0.0], vec![0.0]];
        assert!(matrix_from_rows(&rows, "M").is_err());
    }

    #[test]
    fn odd_dimension_needs_an_explicit_fiber() {
        let err = standard_cocycle(3, 1.0).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
