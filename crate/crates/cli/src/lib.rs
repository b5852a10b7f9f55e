//! Command-line front end: argument parsing, dispatch and report rendering.

mod ainfty;
mod fukaya;
mod hurwitz;
mod plane;
mod quintic;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::Report;

#[derive(Debug, Parser)]
#[command(name = "mirrorkit", version, about = "Exact enumerative and A-infinity computations")]
pub struct Cli {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for brute-force enumeration; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..=256))]
    pub threads: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Instanton numbers of the quintic threefold.
    Quintic(QuinticArgs),
    /// Rational plane curves through 3d − 1 points.
    PlaneCurves(PlaneArgs),
    /// Connected simply branched covers of an elliptic curve.
    Hurwitz(HurwitzArgs),
    /// q-expansion of E2, E4 or E6.
    Eisenstein(EisensteinArgs),
    /// Verify finite A-infinity categories and twisted complexes.
    Ainfty(AinftyArgs),
    /// m2 structure constants between three lines on the torus.
    FukayaTorus(FukayaArgs),
}

#[derive(Debug, Args)]
pub struct QuinticArgs {
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(0..=40))]
    pub dmax: u32,
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug, Args)]
pub struct PlaneArgs {
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(0..=30))]
    pub dmax: u32,
    /// Also print every nonzero associativity residual of the potential.
    #[arg(long)]
    pub residual: bool,
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug, Args)]
pub struct HurwitzArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=8))]
    pub genus: u32,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=40))]
    pub dmax: u32,
    /// Recount by enumerating monodromy tuples.
    #[arg(long)]
    pub bruteforce: bool,
    /// Express the series in E2, E4, E6.
    #[arg(long)]
    pub fit: bool,
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug, Args)]
pub struct EisensteinArgs {
    #[arg(long, default_value_t = 2, value_parser = weight)]
    pub k: u32,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(0..=500))]
    pub order: u32,
    #[arg(long)]
    pub selftest: bool,
}

fn weight(s: &str) -> Result<u32, String> {
    match s {
        "2" | "4" | "6" => Ok(s.parse().expect("digit")),
        _ => Err("supported weights are 2, 4 and 6".into()),
    }
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct AinftyArgs {
    #[arg(long)]
    pub selftest: bool,
    #[command(subcommand)]
    pub action: Option<AinftyAction>,
}

#[derive(Debug, Subcommand)]
pub enum AinftyAction {
    /// Check a JSON document.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, required_unless_present = "selftest")]
    pub input: Option<PathBuf>,
    /// Highest arity of the identities checked.
    #[arg(long, default_value_t = mirrorkit::ainfty::DEFAULT_ARITY as u32, value_parser = clap::value_parser!(u32).range(1..=8))]
    pub arity: u32,
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug, Args)]
pub struct FukayaArgs {
    /// Three primitive directions `p/q`, comma separated.
    #[arg(long, default_value = "1/0,0/1,1/1")]
    pub slopes: String,
    /// Three rational offsets.
    #[arg(long, default_value = "0,0,1/2")]
    pub offsets: String,
    /// Lift indices fixing the gradings.
    #[arg(long, default_value = "0,0,0")]
    pub lifts: String,
    #[arg(long, default_value_t = 1.0)]
    pub area: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Compute(_) => 1,
        }
    }
}

pub(crate) fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let threads = usize::from(cli.threads);
    match &cli.command {
        Command::Quintic(a) if a.selftest => Ok(quintic::selftest()),
        Command::Quintic(a) => quintic::run(a.dmax as usize),
        Command::PlaneCurves(a) if a.selftest => Ok(plane::selftest()),
        Command::PlaneCurves(a) => plane::run(a.dmax as usize, a.residual),
        Command::Hurwitz(a) if a.selftest => Ok(hurwitz::selftest(threads)),
        Command::Hurwitz(a) => hurwitz::run(a, threads),
        Command::Eisenstein(a) if a.selftest => Ok(hurwitz::eisenstein_selftest()),
        Command::Eisenstein(a) => hurwitz::eisenstein(a.k, a.order as usize),
        Command::Ainfty(AinftyArgs { selftest: true, .. })
        | Command::Ainfty(AinftyArgs { action: Some(AinftyAction::Check(CheckArgs { selftest: true, .. })), .. }) => {
            Ok(ainfty::selftest())
        }
        Command::Ainfty(AinftyArgs { action: Some(AinftyAction::Check(c)), .. }) => {
            let path = c.input.as_ref().expect("clap requires --input without --selftest");
            ainfty::check(path, c.arity as usize)
        }
        Command::Ainfty(_) => Err(CliError::Usage("ainfty needs a subcommand (check) or --selftest".into())),
        Command::FukayaTorus(a) if a.selftest => Ok(fukaya::selftest()),
        Command::FukayaTorus(a) => fukaya::run(a),
    }
}

/// Parses `args` (program name first), runs, writes to `out`/`err` and
/// returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.json).as_bytes());
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
