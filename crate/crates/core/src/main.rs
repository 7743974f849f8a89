//! Command-line front end: sweeps, Berry phases, monopole flux and the
//! Renner-Teller demo.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid flags, 3 domain error.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xyqubit::geometric::{renner_teller_levels, renner_teller_ground_state};
use xyqubit::sweep::{export_crossings_csv, Axis, CrossingSet};
use xyqubit::{
    detect_crossings, export_csv, loop_phase_analytic, monopole_flux, renner_teller_loop_phase,
    sweep, wilson_loop_phase, Error, Observable, ParamPath,
};

#[derive(Parser)]
#[command(name = "xyqubit", version, about = "Two-qubit XY model: phase diagram, entanglement and geometric phases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an observable on a (lambda, gamma) grid and write CSV
    Sweep(SweepArgs),
    /// Wilson-loop Berry phase around a circuit at fixed (r, theta)
    Berry(BerryArgs),
    /// Flux of the monopole field through a sphere of radius r
    Flux(FluxArgs),
    /// Geometric phase around the Renner-Teller contact
    RennerTeller(RennerTellerArgs),
    /// Locate level crossings on a gap grid
    Crossings(CrossingsArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long)]
    observable: Observable,
    #[arg(long, default_value_t = -2.0)]
    lmin: f64,
    #[arg(long, default_value_t = 2.0)]
    lmax: f64,
    #[arg(long, default_value_t = -2.0)]
    gmin: f64,
    #[arg(long, default_value_t = 2.0)]
    gmax: f64,
    #[arg(long, default_value_t = 101)]
    res: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct BerryArgs {
    #[arg(long)]
    r: f64,
    /// Polar angle in radians
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 2000)]
    segments: usize,
    /// Accept circuits inside the degeneracy sphere
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    inside_allowed: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FluxArgs {
    #[arg(long)]
    r: f64,
    /// Grid cells per axis
    #[arg(long, default_value_t = 256)]
    n: usize,
    #[arg(long)]
    n_theta: Option<usize>,
    #[arg(long)]
    n_phi: Option<usize>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RennerTellerArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 2000)]
    segments: usize,
    /// Write the two lowest levels of H(lambda, 1) over lambda in [-2, 2]
    #[arg(long)]
    profile_out: Option<PathBuf>,
    #[arg(long, default_value_t = 401)]
    profile_res: usize,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CrossingsArgs {
    #[arg(long, default_value_t = 401)]
    res: usize,
    #[arg(long, default_value_t = 0.02)]
    threshold: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = -1.5)]
    lmin: f64,
    #[arg(long, default_value_t = 1.5)]
    lmax: f64,
    #[arg(long, default_value_t = -1.5)]
    gmin: f64,
    #[arg(long, default_value_t = 1.5)]
    gmax: f64,
}

enum Failure {
    Io(String),
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Failure::Io(e.to_string()),
            Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn io_failure(context: &str, e: std::io::Error) -> Failure {
    Failure::Io(format!("{context}: {e}"))
}

fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn run_sweep(args: SweepArgs) -> Result<(), Failure> {
    let grid = sweep(args.observable, (args.lmin, args.lmax), (args.gmin, args.gmax), args.res)?;
    export_csv(&grid, &args.out)?;
    Ok(())
}

fn run_berry(args: BerryArgs) -> Result<(), Failure> {
    if args.segments < 3 {
        return Err(Failure::Usage("--segments must be at least 3".into()));
    }
    if !args.inside_allowed && args.r < 1.0 {
        return Err(Error::InsideSphere { r: args.r }.into());
    }
    let path = ParamPath::circle(args.r, args.theta, args.segments)?;
    let numeric = wilson_loop_phase(&path)?.phase;
    let analytic = loop_phase_analytic(args.r, args.theta)?;
    println!(
        "beta_numeric={} beta_analytic={} abs_err={}",
        num(numeric),
        num(analytic),
        num((numeric - analytic).abs())
    );
    Ok(())
}

fn run_flux(args: FluxArgs) -> Result<(), Failure> {
    let n_theta = args.n_theta.unwrap_or(args.n);
    let n_phi = args.n_phi.unwrap_or(args.n);
    if n_theta < 16 || n_phi < 16 {
        return Err(Failure::Usage("grid needs at least 16 cells per axis".into()));
    }
    let flux = monopole_flux(args.r, n_theta, n_phi)?;
    let expected = -8.0 * PI;
    println!(
        "flux={} expected=-8*pi rel_err={}",
        num(flux),
        num(((flux - expected) / expected).abs())
    );
    Ok(())
}

fn write_profile(path: &PathBuf, res: usize) -> Result<(), Failure> {
    let axis = Axis::new(-2.0, 2.0, res)?;
    let ctx = format!("writing {}", path.display());
    let file = File::create(path).map_err(|e| io_failure(&ctx, e))?;
    let mut out = BufWriter::new(file);
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "lambda,e_even,e_odd")?;
        for lambda in axis.nodes() {
            let (even, odd) = renner_teller_levels(lambda);
            writeln!(out, "{lambda:.12e},{even:.12e},{odd:.12e}")?;
        }
        out.flush()
    };
    write().map_err(|e| io_failure(&ctx, e))
}

fn run_renner_teller(args: RennerTellerArgs) -> Result<(), Failure> {
    if !(args.lambda.is_finite() && args.lambda > 0.0) {
        return Err(Failure::Usage(format!("--lambda must be positive, got {}", args.lambda)));
    }
    if args.segments < 100 {
        return Err(Failure::Usage("--segments must be at least 100".into()));
    }
    if let Some(path) = &args.profile_out {
        write_profile(path, args.profile_res)?;
    }
    let phase = renner_teller_loop_phase(args.lambda, args.segments)?.phase;
    let start = renner_teller_ground_state(args.lambda, 0.0);
    let end = renner_teller_ground_state(args.lambda, 2.0 * PI);
    println!(
        "loop_phase={} state_distance={}",
        num(phase),
        num(start.max_abs_diff(&end))
    );
    Ok(())
}

fn run_crossings(args: CrossingsArgs) -> Result<(), Failure> {
    if !(args.threshold > 0.0 && args.threshold.is_finite()) {
        return Err(Failure::Usage(format!("--threshold must be positive, got {}", args.threshold)));
    }
    let grid = sweep(Observable::Gap, (args.lmin, args.lmax), (args.gmin, args.gmax), args.res)?;
    let set = match detect_crossings(&grid, args.threshold) {
        Ok(set) => set,
        Err(Error::EmptyResult { .. }) => {
            eprintln!("warning: no crossings found");
            CrossingSet {
                points: Vec::new(),
                threshold: args.threshold,
            }
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.out {
        export_crossings_csv(&set, path)?;
    }
    println!(
        "crossings={} max_abs_r_minus_1={}",
        set.points.len(),
        num(set.max_radial_deviation())
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => run_sweep(a),
        Command::Berry(a) => run_berry(a),
        Command::Flux(a) => run_flux(a),
        Command::RennerTeller(a) => run_renner_teller(a),
        Command::Crossings(a) => run_crossings(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
