//! Command-line front end: phase shifts, theorem checks and depth sweeps.
//!
//! Exit codes: 0 success, 1 verification finding or numerical failure,
//! 2 usage or configuration error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dirac_levinson::error::{Error, Result};
use dirac_levinson::kinematics::Threshold;
use dirac_levinson::levinson::verify_levinson;
use dirac_levinson::phase::{delta_curve, threshold_limit_by_jumps, DeltaGrid};
use dirac_levinson::potential::{AngularChannel, CutoffPotential, PhysicalScale};
use dirac_levinson::sweep::lambda_sweep;

#[derive(Parser)]
#[command(name = "levinson", version, about = "Threshold phase shifts and Levinson's theorem for the radial Dirac equation")]
#[command(args_conflicts_with_subcommands = true, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase shift curve toward one threshold and its limit in units of pi.
    PhaseShift {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        potential: PotentialArgs,
        #[arg(long, value_enum, default_value = "plus")]
        threshold: ThresholdArg,
        /// CSV of (E, delta).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the theorem and its node forms; prints a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        potential: PotentialArgs,
        /// Maximum accepted residual.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the depth of a square well.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Row CSV; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Event list JSON; defaults to `<out>.events.json`.
        #[arg(long)]
        events: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Particle mass.
    #[arg(long = "M", default_value_t = 1.0)]
    mass: f64,
    /// Cutoff radius (square wells only).
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    #[arg(long, allow_hyphen_values = true)]
    kappa: i32,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PotentialArgs {
    /// Square-well depth, V = -lambda inside r0.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// JSON file with `segments` and `r0`.
    #[arg(long)]
    potential: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdArg {
    Plus,
    Minus,
}

impl From<ThresholdArg> for Threshold {
    fn from(t: ThresholdArg) -> Self {
        match t {
            ThresholdArg::Plus => Threshold::Plus,
            ThresholdArg::Minus => Threshold::Minus,
        }
    }
}

enum Failure {
    Finding(String),
    Usage(Error),
    Numerical(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NanArgument
            | Error::NonPositiveArgument(_)
            | Error::ZeroKappa
            | Error::InvalidMass(_)
            | Error::InvalidPotential(_)
            | Error::InvalidRange(_)
            | Error::Io(_)
            | Error::Json(_) => Failure::Usage(e),
            other => Failure::Numerical(other),
        }
    }
}

fn setup(common: &Common) -> Result<(PhysicalScale, AngularChannel)> {
    Ok((PhysicalScale::new(common.mass)?, AngularChannel::new(common.kappa)?))
}

fn load_potential(args: &PotentialArgs, r0: f64) -> Result<CutoffPotential> {
    match (&args.lambda, &args.potential) {
        (Some(lambda), _) => CutoffPotential::square_well(*lambda, r0),
        (None, Some(path)) => CutoffPotential::from_json_file(path),
        (None, None) => Err(Error::InvalidPotential("one of --lambda or --potential is required".into())),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn phase_shift(common: &Common, pot: &PotentialArgs, t: Threshold, out: Option<&Path>) -> Result<(), Failure> {
    let (scale, ch) = setup(common)?;
    let p = load_potential(pot, common.r0)?;
    let rec = delta_curve(&p, ch, &scale, t, &DeltaGrid::default())?;
    if let Some(lambda) = p.square_well_depth() {
        let jumps = threshold_limit_by_jumps(lambda, ch, &scale, p.cutoff_radius(), t)?;
        if jumps.half_pi_units != rec.threshold_in_half_pi_units {
            return Err(Error::MethodDisagreement { continuity: rec.threshold_limit, jumps: jumps.delta }.into());
        }
    }
    if let Some(path) = out {
        let mut w = csv::Writer::from_writer(create(path)?);
        w.write_record(["E", "delta"]).map_err(Error::from)?;
        for (e, d) in rec.energies.iter().zip(&rec.delta) {
            w.write_record([e.energy().to_string(), d.to_string()]).map_err(Error::from)?;
        }
        w.flush().map_err(Error::from)?;
        log::info!("wrote {} points to {}", rec.delta.len(), path.display());
    }
    println!("delta/pi = {}", rec.threshold_in_half_pi_units as f64 / 2.0);
    Ok(())
}

fn verify(common: &Common, pot: &PotentialArgs, tol: f64, out: Option<&Path>) -> Result<(), Failure> {
    let (scale, ch) = setup(common)?;
    let p = load_potential(pot, common.r0)?;
    let report = verify_levinson(&p, ch, &scale)?;
    let text = serde_json::to_string_pretty(&report).map_err(Error::from)?;
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(Error::from)?;
    }
    if !(report.residual < tol) {
        return Err(Failure::Finding(format!("residual {:e} exceeds tolerance {tol:e}", report.residual)));
    }
    Ok(())
}

fn sweep(
    common: &Common,
    (lo, hi, step): (f64, f64, f64),
    tol: f64,
    out: Option<&Path>,
    events: Option<&Path>,
) -> Result<(), Failure> {
    let (scale, ch) = setup(common)?;
    let result = lambda_sweep(ch, &scale, common.r0, lo, hi, step)?;
    match out {
        Some(path) => result.write_csv(create(path)?)?,
        None => result.write_csv(io::stdout().lock())?,
    }
    let events_path = events.map(Path::to_path_buf).or_else(|| out.map(|p| p.with_extension("events.json")));
    if let Some(path) = events_path {
        let mut w = create(&path)?;
        result.write_events_json(&mut w)?;
        w.flush().map_err(Error::from)?;
        log::info!("wrote {} events to {}", result.events.len(), path.display());
    }
    let breaches: Vec<f64> = result.rows.iter().filter(|r| !(r.eq2_residual < tol)).map(|r| r.lambda).collect();
    if !breaches.is_empty() {
        return Err(Failure::Finding(format!("residual above {tol:e} at lambda = {breaches:?}")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let level = std::env::var("LOG_LEVEL").unwrap_or_else(|_| "warn".into());
    env_logger::Builder::new().parse_filters(&level).init();

    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::PhaseShift { common, potential, threshold, out } => {
            phase_shift(common, potential, (*threshold).into(), out.as_deref())
        }
        Command::Verify { common, potential, tol, out } => verify(common, potential, *tol, out.as_deref()),
        Command::Sweep { common, lambda_min, lambda_max, step, tol, out, events } => {
            sweep(common, (*lambda_min, *lambda_max, *step), *tol, out.as_deref(), events.as_deref())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Finding(msg)) => {
            eprintln!("levinson: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("levinson: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("levinson: {e}");
            ExitCode::from(2)
        }
    }
}
