//! `qpd`: equilibria, sweeps and threshold reports for the three-qubit
//! quantum prisoners' dilemma.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpd_core::analysis::{interpolation_scan, sweep, AxisRange, SweepGrid, ThresholdConfig, DEFAULT_GRID_STEPS};
use qpd_core::{find_pure_ne, GameParams, DEFAULT_EPSILON};

mod render;

#[derive(Parser, Debug)]
#[command(name = "qpd", version, about = "Quantum prisoners' dilemma with a resource qubit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pure Nash equilibria at one parameter point.
    Ne {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Equilibria and concurrences over a (gamma, delta) grid; payoff and
    /// phase maps plus the concurrence surfaces.
    Sweep {
        /// Grid points per axis; gamma spans [0, pi], delta spans [0, pi/2].
        #[arg(long, default_value_t = DEFAULT_GRID_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        eta: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degrees: bool,
    },
    /// Every scalar threshold and region fit next to its reference value.
    Thresholds {
        #[arg(long, default_value_t = DEFAULT_GRID_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Payoffs along the GHZ-type (t = 0) to W-type (t = 1) path.
    Interp {
        /// Number of intervals; t_steps + 1 rows are written.
        #[arg(long = "t-steps", default_value_t = 100)]
        t_steps: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Read angles in degrees instead of radians.
    #[arg(long)]
    degrees: bool,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<qpd_core::Error> for Failure {
    fn from(e: qpd_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn check_epsilon(eps: f64) -> Result<f64, Failure> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(eps)
    } else {
        Err(Failure::Usage(format!(
            "epsilon must be a finite non-negative number, got {eps}"
        )))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
        }
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Runtime(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Ne { point, format } => {
            let params = GameParams::new(
                angle(point.gamma, point.degrees),
                angle(point.delta, point.degrees),
                angle(point.eta, point.degrees),
            )
            .map_err(|e| Failure::Usage(e.to_string()))?;
            let report = find_pure_ne(&params, check_epsilon(point.epsilon)?);
            let text = match format {
                Format::Csv => render::ne_text(&report),
                Format::Json => render::ne_json(&report),
            };
            emit(&text, None)
        }
        Command::Sweep {
            steps,
            eta,
            epsilon,
            output,
            degrees,
        } => {
            use std::f64::consts::{FRAC_PI_2, PI};
            let grid = AxisRange::new(0.0, PI, steps)
                .and_then(|g| Ok((g, AxisRange::new(0.0, FRAC_PI_2, steps)?)))
                .and_then(|(g, d)| SweepGrid::new(g, d, angle(eta, degrees)))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let s = sweep(&grid, check_epsilon(epsilon)?);
            let text = match output.format {
                Format::Csv => render::sweep_csv(&s),
                Format::Json => render::sweep_json(&s),
            };
            emit(&text, output.out.as_ref())
        }
        Command::Thresholds { steps, epsilon, format } => {
            if steps < 2 {
                return Err(Failure::Usage(format!("need at least 2 steps, got {steps}")));
            }
            let config = ThresholdConfig {
                grid_steps: steps,
                epsilon: check_epsilon(epsilon)?,
                ..ThresholdConfig::default()
            };
            let report = qpd_core::analysis::compute_thresholds(&config)?;
            let text = match format {
                Format::Csv => render::thresholds_csv(&report),
                Format::Json => render::thresholds_json(&report),
            };
            emit(&text, None)
        }
        Command::Interp {
            t_steps,
            epsilon,
            output,
        } => {
            if t_steps < 2 {
                return Err(Failure::Usage(format!("need at least 2 t-steps, got {t_steps}")));
            }
            let rows = interpolation_scan(t_steps, check_epsilon(epsilon)?)?;
            let text = match output.format {
                Format::Csv => render::interp_csv(&rows),
                Format::Json => render::interp_json(&rows),
            };
            emit(&text, output.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
