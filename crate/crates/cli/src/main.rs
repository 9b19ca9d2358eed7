//! Command-line driver for the gapped-chain transfer simulations.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical-stability
//! error, 4 verification failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gapchannel::config::{parse_config, ConfigError, ExperimentKind};
use gapchannel::{csv, presets, run, verify};
use gapchannel_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "gapchannel",
    version,
    about = "Excitation transfer through gapped chains with weakly coupled ancillas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// TEBD run of the spin chain with two spin ancillas.
    SpinEvolve(RunArgs),
    /// Exact Gaussian run of the harmonic chain with two oscillator ancillas.
    HarmonicEvolve(RunArgs),
    /// Closed-form master-equation occupations.
    MasterSolve(RunArgs),
    /// Transfer-frequency sweep over the pinning frequency.
    FrequencyScan(RunArgs),
    /// Finite-size spin-gap scan with extrapolation and classification.
    GapScan(RunArgs),
    /// Published parameter sets by figure name.
    Preset(PresetArgs),
    /// Run every acceptance criterion and report one line per criterion.
    Verify,
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Shrink the run to desk scale (recorded in the output metadata).
    #[arg(long)]
    desk: bool,
    /// Output CSV path (defaults to `<kind>.csv`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PresetArgs {
    /// Preset name: fig1, fig2, fig3, fig4, fig6, or fig7.
    name: String,
    /// Run the desk-scale variant instead of the published geometry.
    #[arg(long)]
    desk: bool,
    /// Output directory (defaults to the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ancilla separation for the fig6 sweep (not stated in its caption).
    #[arg(long)]
    sep: Option<usize>,
}

/// A failed invocation: process exit code plus a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure {
            code: core_exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

/// Bad parameters are configuration errors; everything else the core can
/// report is a numerical-stability problem.
fn core_exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::InvalidParams(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify => return run_verify(),
        Command::Preset(args) => run_preset(&args),
        Command::SpinEvolve(args) => run_kind(ExperimentKind::SpinEvolve, &args),
        Command::HarmonicEvolve(args) => run_kind(ExperimentKind::HarmonicEvolve, &args),
        Command::MasterSolve(args) => run_kind(ExperimentKind::MasterSolve, &args),
        Command::FrequencyScan(args) => run_kind(ExperimentKind::FrequencyScan, &args),
        Command::GapScan(args) => run_kind(ExperimentKind::GapScan, &args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run_kind(kind: ExperimentKind, args: &RunArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", args.config.display()),
    })?;
    let mut config = parse_config(&text)?;
    if config.kind() != kind {
        return Err(Failure {
            code: 2,
            message: format!(
                "configuration declares kind {}, but the command line asked for {}",
                config.kind().name(),
                kind.name()
            ),
        });
    }
    let mut metadata = BTreeMap::new();
    if args.desk {
        metadata.insert("desk".into(), "true".into());
        if let Some(note) = run::desk_scale(&mut config) {
            metadata.insert("desk_deviation".into(), note);
        }
    }
    let series = run::execute(&config, &metadata)?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", kind.name())));
    csv::write_series(&out, &series, run::axis_label(&config))?;
    println!("wrote {}", out.display());
    Ok(())
}

fn run_preset(args: &PresetArgs) -> Result<(), Failure> {
    let runs = presets::resolve(&args.name, args.desk, args.sep)?;
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    for preset in runs {
        let series = run::execute(&preset.config, &preset.metadata)?;
        let path = dir.join(format!("{}.csv", preset.stem));
        csv::write_series(&path, &series, run::axis_label(&preset.config))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_verify() -> ExitCode {
    match verify::run_all() {
        Ok(reports) => {
            let mut all_pass = true;
            for report in &reports {
                println!("{}", report.line());
                all_pass &= report.pass();
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(core_exit_code(&e))
        }
    }
}
