mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;

/// Verification suites and tools for generalized coherent states.
#[derive(Parser, Debug)]
#[command(name = "gcs", version)]
struct Cli {
    /// Print the run report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Replace every check tolerance with this value.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Report runtime as 0 so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the constant d and the resolution of identity for one group.
    Verify {
        #[command(subcommand)]
        group: GroupArgs,
    },
    /// Integrate spin dynamics in an external field and compare with the classical path.
    Dynamics(DynamicsArgs),
    /// Admissibility and frame bounds of a lattice subsystem.
    Lattice(LatticeArgs),
    /// Overlap of two coherent states against its closed form.
    Overlap {
        #[command(subcommand)]
        group: OverlapArgs,
    },
    /// Density matrix to P coefficients and back.
    Pq(PqArgs),
}

#[derive(Subcommand, Debug)]
pub enum GroupArgs {
    Su2(Su2Args),
    Su11(Su11Args),
    Weyl(WeylArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Su2Args {
    /// Spin, integer or half-integer (`2`, `3/2`, `1.5`).
    #[arg(long, allow_negative_numbers = true)]
    pub j: String,
    /// Weight of the fiducial vector; defaults to `j`.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub n_theta: usize,
    #[arg(long, default_value_t = 128)]
    pub n_phi: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Su11Args {
    /// Bargmann index, `k > 1/2`.
    #[arg(long, allow_negative_numbers = true)]
    pub k: f64,
    #[arg(long, default_value_t = 256)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 16)]
    pub probe: usize,
    /// Radial cutoff `ε` of the invariant-measure grid.
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 48)]
    pub n_r: usize,
    #[arg(long, default_value_t = 96)]
    pub n_phi: usize,
}

#[derive(Args, Debug, Clone)]
pub struct WeylArgs {
    /// Fock cutoff.
    #[arg(long, default_value_t = 64)]
    pub cutoff: usize,
    /// Number state used as fiducial vector.
    #[arg(long, default_value_t = 0)]
    pub fiducial: usize,
    #[arg(long, default_value_t = 8)]
    pub probe: usize,
    #[arg(long, default_value_t = 6.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 48)]
    pub n_r: usize,
    #[arg(long, default_value_t = 96)]
    pub n_phi: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum FieldKind {
    Constant,
    Rotating,
    Chirped,
    File,
}

#[derive(Args, Debug, Clone)]
pub struct DynamicsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub j: String,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<String>,
    /// Polar angle of the initial direction.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
    pub theta: f64,
    /// Azimuth of the initial direction.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = FieldKind::Rotating)]
    pub field: FieldKind,
    /// Constant field `a1,a2,a3`.
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub axial: f64,
    /// Chirp rate `r` in `ϑ = ωt + rt²/2`.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub rate: f64,
    /// CSV with columns `t,a1,a2,a3` for `--field file`.
    #[arg(long)]
    pub field_file: Option<PathBuf>,
    #[arg(long, default_value_t = 10.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Trajectory CSV destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum LatticeGroup {
    Weyl,
    Su2,
    Su11,
}

#[derive(Args, Debug, Clone)]
pub struct LatticeArgs {
    #[arg(value_enum)]
    pub group: LatticeGroup,
    /// Lattice JSON for `weyl`, point-set JSON for `su2` and `su11`.
    pub spec: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub probe: usize,
    /// Lattice points `mω₁ + nω₂` with `|m|, |n| ≤ range` (weyl).
    #[arg(long, default_value_t = 6)]
    pub range: i64,
    /// Fock cutoff (weyl).
    #[arg(long, default_value_t = 64)]
    pub cutoff: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<String>,
    #[arg(long)]
    pub k: Option<f64>,
    /// Frame report JSON destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum OverlapArgs {
    /// Points as `theta,phi`.
    Su2 {
        #[arg(long, allow_negative_numbers = true)]
        j: String,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Points as `re,im` inside the unit disk.
    Su11 {
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 256)]
        cutoff: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Points as `re,im`.
    Weyl {
        #[arg(long, default_value_t = 64)]
        cutoff: usize,
        #[arg(long, default_value_t = 0)]
        fiducial: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PqArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub j: String,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<String>,
    /// Number of random density matrices.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("GCS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("GCS_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<RunReport, commands::CliError> {
    match &cli.command {
        Command::Verify { group } => commands::verify(group),
        Command::Dynamics(a) => commands::dynamics(a),
        Command::Lattice(a) => commands::lattice(a),
        Command::Overlap { group } => commands::overlap(group),
        Command::Pq(a) => commands::pq(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.tol {
        report.override_tolerance(t);
    }
    report.runtime_ms = if cli.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    if cli.json {
        match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    } else {
        print!("{}", report.table());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
