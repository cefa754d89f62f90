//! Command-line front end for the deformed torus-algebra stack.
//!
//! Six subcommands cover the workflow end to end: `calibrate` pins the
//! phase constant against the oscillatory-integral oracle, `deform`
//! multiplies polynomial files, `norm` brackets one element's operator
//! norm, `field-check` verifies the covariant-field axioms on a spec file,
//! `scan` profiles a scenario across nested refinements and reports
//! continuity statistics, and `scenario` emits the norm-profile CSV of a
//! named family.
//!
//! Outputs are byte-stable for a fixed configuration: `--jobs k` changes
//! only the wall clock, never the artifact. Failures exit with 1 (invalid
//! input), 2 (numerical guard), or 3 (failed checks) and print a single
//! machine-readable JSON object on stderr. Set `RIEFFEL_FIELDS_LOG=info`
//! for progress logging.

mod commands;
mod error;
mod wire;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{ProfileFlags, ScenarioName};
use error::CliError;
use rieffel_fields::PHASE_CONSTANT;

#[derive(Debug, Parser)]
#[command(name = "rieffel-fields", version)]
#[command(about = "Deformed torus algebras: calibration, products, certified norms, field scans")]
struct Cli {
    /// Worker threads for fiberwise profiling (artifacts are identical for
    /// any value; defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Calibrate the phase constant against the quadrature oracle
    Calibrate {
        /// Base damping ε; the ladder {2ε, ε, ε/2} drives the extrapolation.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,

        /// Half-width R of the quadrature box [-R, R]².
        #[arg(long = "box", default_value_t = 14.0)]
        box_half_width: f64,

        /// Quadrature points per axis.
        #[arg(long = "quad-points", default_value_t = 561)]
        quad_points: usize,

        /// Largest tolerated extrapolation residual.
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,

        /// Report path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Deformed product of two polynomial files
    Deform {
        /// Left factor (JSON polynomial).
        left: PathBuf,

        /// Right factor (JSON polynomial).
        right: PathBuf,

        /// Fiber file {"M": rows, "B": rows|null}; overrides --kappa.
        #[arg(long)]
        fiber: Option<PathBuf>,

        /// Phase constant for the standard-form fiber (0 = classical).
        #[arg(long, default_value_t = PHASE_CONSTANT)]
        kappa: f64,

        /// Product path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Certified norm bracket of one element
    Norm {
        /// Element file (JSON polynomial).
        element: PathBuf,

        /// Fiber file {"M": rows, "B": rows|null}; overrides --kappa.
        #[arg(long)]
        fiber: Option<PathBuf>,

        /// Phase constant for the standard-form fiber (0 = classical).
        #[arg(long, default_value_t = PHASE_CONSTANT)]
        kappa: f64,

        /// Half-width of the lattice section box.
        #[arg(long = "N", default_value_t = 32)]
        box_radius: i64,

        /// Squarings in the ℓ¹ power upper bound.
        #[arg(long = "power-doublings", default_value_t = 3)]
        power_doublings: usize,

        /// Bracket path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Covariance, centrality, and nondegeneracy checks on a field spec
    FieldCheck {
        /// Field spec file (JSON).
        #[arg(long)]
        input: PathBuf,

        /// Element name inside the field spec.
        #[arg(long, default_value = "element")]
        element: String,

        /// Residual tolerance for covariance and centrality.
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,

        /// Seed for the probe scalars and probe points.
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Report path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Profile a scenario across nested refinements and report continuity
    Scan {
        /// Which scenario family to build.
        scenario: ScenarioName,

        /// Scenario config file (JSON).
        #[arg(long)]
        input: PathBuf,

        /// Number of nested refinement levels.
        #[arg(long, default_value_t = 3)]
        levels: usize,

        /// Half-width of the lattice section box.
        #[arg(long = "N", default_value_t = 32)]
        box_radius: i64,

        /// Squarings in the ℓ¹ power upper bound.
        #[arg(long = "power-doublings", default_value_t = 3)]
        power_doublings: usize,

        /// Grid resolution per axis for classical fibers.
        #[arg(long = "grid", default_value_t = 256)]
        classical_grid: usize,

        /// Artifact prefix: writes {prefix}.level{i}.csv and
        /// {prefix}.continuity.json.
        #[arg(long)]
        output: PathBuf,
    },

    /// Build a named scenario and emit its norm-profile CSV
    Scenario {
        /// Which scenario family to build.
        scenario: ScenarioName,

        /// Scenario config file (JSON).
        #[arg(long)]
        input: PathBuf,

        /// Half-width of the lattice section box.
        #[arg(long = "N", default_value_t = 32)]
        box_radius: i64,

        /// Squarings in the ℓ¹ power upper bound.
        #[arg(long = "power-doublings", default_value_t = 3)]
        power_doublings: usize,

        /// Grid resolution per axis for classical fibers.
        #[arg(long = "grid", default_value_t = 256)]
        classical_grid: usize,

        /// Profile CSV path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,

        /// Also write the constructed field spec as JSON.
        #[arg(long = "spec-out")]
        spec_out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::invalid(format!("configuring {jobs} worker threads: {e}")))?;
    }
    match cli.command {
        Command::Calibrate {
            eps,
            box_half_width,
            quad_points,
            tolerance,
            output,
        } => commands::calibrate(eps, box_half_width, quad_points, tolerance, output.as_deref()),
        Command::Deform {
            left,
            right,
            fiber,
            kappa,
            output,
        } => commands::deform(&left, &right, fiber.as_deref(), kappa, output.as_deref()),
        Command::Norm {
            element,
            fiber,
            kappa,
            box_radius,
            power_doublings,
            output,
        } => commands::norm(
            &element,
            fiber.as_deref(),
            kappa,
            box_radius,
            power_doublings,
            output.as_deref(),
        ),
        Command::FieldCheck {
            input,
            element,
            tolerance,
            seed,
            output,
        } => commands::field_check(&input, &element, tolerance, seed, output.as_deref()),
        Command::Scan {
            scenario,
            input,
            levels,
            box_radius,
            power_doublings,
            classical_grid,
            output,
        } => commands::scan(
            scenario,
            &input,
            levels,
            ProfileFlags {
                box_radius,
                power_doublings,
                classical_grid,
            },
            &output,
        ),
        Command::Scenario {
            scenario,
            input,
            box_radius,
            power_doublings,
            classical_grid,
            output,
            spec_out,
        } => commands::scenario(
            scenario,
            &input,
            ProfileFlags {
                box_radius,
                power_doublings,
                classical_grid,
            },
            output.as_deref(),
            spec_out.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("RIEFFEL_FIELDS_LOG", "warn"),
    )
    .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if e.kind() == ErrorKind::DisplayHelp || e.kind() == ErrorKind::DisplayVersion =>
        {
            // Help and version are successful, human-facing paths.
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::invalid(e.to_string());
            eprintln!("{}", err.stderr_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.stderr_json());
            ExitCode::from(err.exit_code())
        }
    }
}
