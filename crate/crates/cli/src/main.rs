//! `sphmean`: grid scans, audits and the acceptance suite from the command line.

mod cmd;
mod grid;
mod table;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sphmean::envelopes::EnvelopeError;
use sphmean::kernel::KernelError;
use sphmean::pde::PdeError;
use sphmean::quad::{QuadError, QuadSpec};
use sphmean::regions::RegionError;
use sphmean::special_fun::{Params, SpecialError};
use sphmean::transforms::TransformError;
use std::path::PathBuf;
use std::process::ExitCode;
use table::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::NoConvergence { .. } => CliError::Convergence(e.to_string()),
            QuadError::BadSpec(_) => CliError::Config(e.to_string()),
        }
    }
}

impl From<SpecialError> for CliError {
    fn from(e: SpecialError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<RegionError> for CliError {
    fn from(e: RegionError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Convergence { .. } => CliError::Convergence(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        match e {
            EnvelopeError::Kernel(k) => k.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Quadrature(q) => q.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<PdeError> for CliError {
    fn from(e: PdeError) -> Self {
        match e {
            PdeError::Transform(t) => t.into(),
            PdeError::Quadrature(q) => q.into(),
            PdeError::Region(r) => r.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sphmean", version, about = "Generalized spherical means M_t^{alpha,beta}: kernels, envelopes, regions, PDE solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel values on a (t, x, z) grid with envelope ratios.
    Kernel(cmd::kernel::KernelArgs),
    /// Time norms of the kernel against their envelope.
    Tnorm(cmd::tnorm::TnormArgs),
    /// Mixed-norm admissibility conditions, set shapes and (alpha, beta) plane tags.
    Regions(cmd::regions::RegionsArgs),
    /// EPD and wave solutions with residuals, or Strichartz scaling sweeps.
    Pde(cmd::pde::PdeArgs),
    /// Run the acceptance suite.
    Verify(cmd::verify::VerifyArgs),
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 20240917)]
    pub seed: u64,
}

impl Common {
    pub fn quad(&self) -> Result<QuadSpec, CliError> {
        let q = QuadSpec::with_tol(self.tol);
        q.validate()?;
        Ok(q)
    }
}

/// α and β as "n/d", integers or decimals; only the first two forms are exact.
#[derive(Args, Debug, Clone, Serialize)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

impl ParamArgs {
    pub fn params(&self) -> Result<Params, CliError> {
        Ok(Params::parse(&self.alpha, &self.beta)?)
    }
}

pub struct Output {
    pub report: Report,
    pub failure: Option<CliError>,
}

impl From<Report> for Output {
    fn from(report: Report) -> Self {
        Output { report, failure: None }
    }
}

/// Maps `f` over `items` on all available cores, keeping the input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    if threads <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (common, echo, output) = match &cli.command {
        Command::Kernel(a) => (&a.common, echo("kernel", a), cmd::kernel::run(a)?),
        Command::Tnorm(a) => (&a.common, echo("tnorm", a), cmd::tnorm::run(a)?),
        Command::Regions(a) => (&a.common, echo("regions", a), cmd::regions::run(a)?),
        Command::Pde(a) => (&a.common, echo("pde", a), cmd::pde::run(a)?),
        Command::Verify(a) => (&a.common, echo("verify", a), cmd::verify::run(a)?),
    };
    let text = output.report.render(common.format, echo);
    table::write_output(&text, common.out.as_deref())?;
    output.failure.map_or(Ok(()), Err)
}

fn echo<T: Serialize>(command: &str, args: &T) -> serde_json::Value {
    serde_json::json!({ "command": command, "args": args })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sphmean: {e}");
            ExitCode::from(e.code())
        }
    }
}
