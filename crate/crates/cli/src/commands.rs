//! Implementations of the six subcommands.
//!
//! Every command reads JSON inputs, computes with the library, and emits a
//! deterministic artifact: JSON reports carry a `params` object recording
//! the numeric configuration they were produced with, and CSV tables carry
//! the same information in `#`-prefixed header lines.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rieffel_fields::field::nondegeneracy_check;
use rieffel_fields::{
    build_hbar_family, build_rotation_family, build_tsu2_disk, calibrate_phase_constant,
    check_centrality, check_covariance, continuity_report, deformed_mul, norm_bracket,
    quantized_norm_profile, CTFunction, CharacterAction, CovariantFieldSpec, FiberNormProfile,
    ProfileParams, QuadratureParams, SkewForm, TrigPoly,
};

use crate::error::CliError;
use crate::wire::{
    matrix_from_rows, profile_csv, read_json, standard_cocycle, to_pretty_json, write_text,
    DiskConfig, FiberConfig, HbarConfig, RotationConfig,
};

/// Number of intermediate-power terms tolerated by the ℓ¹ upper bound.
const SUPPORT_CAP: usize = 20_000;

/// Number of probe points drawn for covariance checks.
const PROBE_POINTS: usize = 3;

/// Named scenario builders exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScenarioName {
    /// Semiclassical family: the deformation matrix scales linearly in ℏ.
    Hbar,
    /// Rotation-angle family over a θ grid with consecutive adjacency.
    Rotation,
    /// Polar-grid disk base restricted from the circle-times-sphere algebra.
    Tsu2Disk,
}

impl ScenarioName {
    fn as_str(self) -> &'static str {
        match self {
            Self::Hbar => "hbar",
            Self::Rotation => "rotation",
            Self::Tsu2Disk => "tsu2-disk",
        }
    }
}

/// Numeric knobs shared by the profile-producing commands.
#[derive(Debug, Clone, Copy)]
pub struct ProfileFlags {
    pub box_radius: i64,
    pub power_doublings: usize,
    pub classical_grid: usize,
}

impl ProfileFlags {
    fn params(&self) -> ProfileParams {
        ProfileParams {
            box_radius: self.box_radius,
            power_doublings: self.power_doublings,
            classical_grid: self.classical_grid,
            support_cap: SUPPORT_CAP,
        }
    }

    fn header(&self) -> Vec<(&'static str, String)> {
        vec![
            ("box_radius", self.box_radius.to_string()),
            ("power_doublings", self.power_doublings.to_string()),
            ("classical_grid", self.classical_grid.to_string()),
            ("support_cap", SUPPORT_CAP.to_string()),
        ]
    }
}

/// Runs the oscillatory-integral calibration of the phase constant and
/// reports the per-pair diagnostics.
pub fn calibrate(
    eps: f64,
    half_width: f64,
    points: usize,
    tolerance: f64,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let ladder = [2.0 * eps, eps, 0.5 * eps];
    let params = QuadratureParams {
        damping: eps,
        half_width,
        points,
    };
    let form = SkewForm::standard(1);
    let action = CharacterAction::identity(2);
    log::info!("calibrating with damping ladder {ladder:?}");
    let calibration = calibrate_phase_constant(&form, &action, &ladder, &params, tolerance)?;
    let mut report = serde_json::to_value(&calibration)
        .map_err(|e| CliError::invalid(format!("serializing calibration: {e}")))?;
    report.as_object_mut().expect("calibration is an object").insert(
        "params".into(),
        json!({
            "damping_ladder": ladder,
            "half_width": half_width,
            "points": points,
            "fit_tolerance": tolerance,
        }),
    );
    write_text(output, &to_pretty_json(&report)?)
}

/// Resolves the cocycle for the bare polynomial commands: an explicit fiber
/// file wins, otherwise the standard form at the requested κ.
fn resolve_cocycle(
    dim: usize,
    fiber: Option<&Path>,
    kappa: f64,
) -> Result<rieffel_fields::PhaseCocycle, CliError> {
    match fiber {
        Some(path) => read_json::<FiberConfig>(path)?.cocycle(),
        None => standard_cocycle(dim, kappa),
    }
}

/// Multiplies two polynomial files with the deformed product.
pub fn deform(
    left: &Path,
    right: &Path,
    fiber: Option<&Path>,
    kappa: f64,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let f: TrigPoly = read_json(left)?;
    let g: TrigPoly = read_json(right)?;
    let cocycle = resolve_cocycle(f.dim(), fiber, kappa)?;
    let product = deformed_mul(&f, &g, &cocycle)?;
    write_text(output, &to_pretty_json(&product)?)
}

/// Computes a certified norm bracket for one element in one fiber.
pub fn norm(
    element: &Path,
    fiber: Option<&Path>,
    kappa: f64,
    box_radius: i64,
    power_doublings: usize,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let f: TrigPoly = read_json(element)?;
    let cocycle = resolve_cocycle(f.dim(), fiber, kappa)?;
    let bracket = norm_bracket(&f, &cocycle, box_radius, power_doublings, SUPPORT_CAP)?;
    write_text(output, &to_pretty_json(&bracket)?)
}

/// Draws a deterministic scalar function and probe points, then verifies
/// covariance, centrality, and the exact nondegeneracy identities.
pub fn field_check(
    input: &Path,
    element: &str,
    tolerance: f64,
    seed: u64,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let spec: CovariantFieldSpec = read_json(input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut phi = CTFunction::one(spec.sample_ids().iter().map(|s| s.to_string()));
    for id in spec.sample_ids() {
        phi.insert(
            id,
            num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        );
    }
    let points: Vec<Vec<f64>> = (0..PROBE_POINTS)
        .map(|_| {
            (0..spec.group_dim())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect()
        })
        .collect();

    let covariance = check_covariance(&spec, element, &phi, &points, tolerance)?;
    let centrality = check_centrality(&spec, element, element, &phi, tolerance)?;
    let nondegeneracy = nondegeneracy_check(&spec, element)?;
    let nondegeneracy_exact = nondegeneracy.max_residual == 0.0;
    let passed = covariance.passed && centrality.passed && nondegeneracy_exact;

    let report = json!({
        "covariance": covariance,
        "centrality": centrality,
        "nondegeneracy": nondegeneracy,
        "passed": passed,
        "params": {
            "element": element,
            "tolerance": tolerance,
            "seed": seed,
            "probe_points": PROBE_POINTS,
        },
    });
    write_text(output, &to_pretty_json(&report)?)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::assertion(format!(
            "field checks failed: covariance {:.3e}, centrality {:.3e}, nondegeneracy exact: {}",
            covariance.max_residual, centrality.max_residual, nondegeneracy_exact
        )))
    }
}

/// Builds the named scenario from its config file.
fn build_scenario(
    name: ScenarioName,
    input: &Path,
) -> Result<CovariantFieldSpec, CliError> {
    match name {
        ScenarioName::Rotation => {
            let config: RotationConfig = read_json(input)?;
            Ok(build_rotation_family(&config.element, &config.thetas)?)
        }
        ScenarioName::Hbar => {
            let config: HbarConfig = read_json(input)?;
            let action = CharacterAction::new(matrix_from_rows(&config.action, "action")?)?;
            let scale_form = matrix_from_rows(&config.scale_form, "scale_form")?;
            Ok(build_hbar_family(&config.element, &action, &scale_form, &config.hbars)?)
        }
        ScenarioName::Tsu2Disk => {
            let config: DiskConfig = read_json(input)?;
            let form = SkewForm::new(matrix_from_rows(&config.form, "form")?)?;
            Ok(build_tsu2_disk(&config.poly, config.radial, config.angular, &form)?)
        }
    }
}

/// Builds a named scenario, profiles it, and emits the profile CSV (plus,
/// optionally, the constructed field spec as JSON).
pub fn scenario(
    name: ScenarioName,
    input: &Path,
    flags: ProfileFlags,
    output: Option<&Path>,
    spec_out: Option<&Path>,
) -> Result<(), CliError> {
    let spec = build_scenario(name, input)?;
    log::info!(
        "profiling {} fibers at box radius {}",
        spec.samples().len(),
        flags.box_radius
    );
    let profile = quantized_norm_profile(&spec, "element", &flags.params())?;
    let command = format!("scenario {}", name.as_str());
    let csv = profile_csv(&command, &flags.header(), &spec, &profile)?;
    write_text(output, &csv)?;
    if let Some(path) = spec_out {
        write_text(Some(path), &to_pretty_json(&spec)?)?;
    }
    Ok(())
}

/// The coordinate list with midpoints inserted between consecutive entries;
/// existing entries are kept bit-identical so refined bases nest exactly.
fn refine_midpoints(values: &[f64]) -> Vec<f64> {
    let mut refined = Vec::with_capacity(values.len() * 2);
    for pair in values.windows(2) {
        refined.push(pair[0]);
        refined.push(0.5 * (pair[0] + pair[1]));
    }
    if let Some(last) = values.last() {
        refined.push(*last);
    }
    refined
}

/// Builds `levels` nested refinements of the named scenario.
fn build_levels(
    name: ScenarioName,
    input: &Path,
    levels: usize,
) -> Result<Vec<CovariantFieldSpec>, CliError> {
    if levels == 0 {
        return Err(CliError::invalid("scan needs at least one level"));
    }
    let mut specs = Vec::with_capacity(levels);
    match name {
        ScenarioName::Rotation => {
            let config: RotationConfig = read_json(input)?;
            let mut thetas = config.thetas;
            for _ in 0..levels {
                specs.push(build_rotation_family(&config.element, &thetas)?);
                thetas = refine_midpoints(&thetas);
            }
        }
        ScenarioName::Hbar => {
            let config: HbarConfig = read_json(input)?;
            let action = CharacterAction::new(matrix_from_rows(&config.action, "action")?)?;
            let scale_form = matrix_from_rows(&config.scale_form, "scale_form")?;
            let mut hbars = config.hbars;
            for _ in 0..levels {
                specs.push(build_hbar_family(&config.element, &action, &scale_form, &hbars)?);
                hbars = refine_midpoints(&hbars);
            }
        }
        ScenarioName::Tsu2Disk => {
            let config: DiskConfig = read_json(input)?;
            let form = SkewForm::new(matrix_from_rows(&config.form, "form")?)?;
            let mut radial = config.radial;
            for _ in 0..levels {
                specs.push(build_tsu2_disk(&config.poly, radial, config.angular, &form)?);
                radial = radial.checked_mul(2).ok_or_else(|| {
                    CliError::invalid("radial refinement overflowed".to_string())
                })?;
            }
        }
    }
    Ok(specs)
}

/// Profiles a scenario across nested refinement levels and reports the
/// bracket-aware continuity statistics. Writes `{prefix}.level{i}.csv` per
/// level and `{prefix}.continuity.json`.
pub fn scan(
    name: ScenarioName,
    input: &Path,
    levels: usize,
    flags: ProfileFlags,
    output: &Path,
) -> Result<(), CliError> {
    let specs = build_levels(name, input, levels)?;
    let params = flags.params();
    let mut profiles: Vec<FiberNormProfile> = Vec::with_capacity(specs.len());
    for (i, spec) in specs.iter().enumerate() {
        log::info!("profiling level {i} with {} fibers", spec.samples().len());
        profiles.push(quantized_norm_profile(spec, "element", &params)?);
    }

    let command = format!("scan {}", name.as_str());
    let prefix = output.to_string_lossy();
    let mut written: Vec<String> = Vec::new();
    for (i, (spec, profile)) in specs.iter().zip(profiles.iter()).enumerate() {
        let mut header = flags.header();
        header.push(("level", i.to_string()));
        let csv = profile_csv(&command, &header, spec, profile)?;
        let path = PathBuf::from(format!("{prefix}.level{i}.csv"));
        write_text(Some(&path), &csv)?;
        written.push(path.display().to_string());
    }

    let paired: Vec<(&CovariantFieldSpec, &FiberNormProfile)> =
        specs.iter().zip(profiles.iter()).collect();
    let report = continuity_report(&paired)?;
    let report_value: Value = serde_json::to_value(&report)
        .map_err(|e| CliError::invalid(format!("serializing continuity report: {e}")))?;
    let summary = json!({
        "continuity": report_value,
        "levels_written": written,
        "params": {
            "box_radius": flags.box_radius,
            "power_doublings": flags.power_doublings,
            "classical_grid": flags.classical_grid,
            "support_cap": SUPPORT_CAP,
            "levels": levels,
        },
    });
    let path = PathBuf::from(format!("{prefix}.continuity.json"));
    write_text(Some(&path), &to_pretty_json(&summary)?)
}
