//! Command-line driver for `taulab-core`: run configuration, CSV and
//! snapshot output, run manifests and the `verify-all` acceptance sweep.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! configuration and usage errors.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod metric_config;
pub mod output;
pub mod verify;

pub use error::{CliError, CliResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Deliberate corruptions used to test failure reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Flip the norm sign of the pseudoscalar in the blade sign table.
    CliffordSign,
}

#[derive(Debug, Parser)]
#[command(
    name = "taulab",
    version = concat!(env!("CARGO_PKG_VERSION"), "-", env!("TAULAB_GIT_DESCRIBE")),
    about = "Clifford-space geometry, ADM constraints and tau-evolution experiments"
)]
pub struct Cli {
    #[arg(long, global = true, hide = true, value_enum)]
    pub fault: Option<Fault>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clifford algebra tables
    #[command(subcommand)]
    Clifford(commands::clifford::CliffordCommand),
    /// ADM constraint evaluation on built-in metrics
    #[command(subcommand)]
    Adm(commands::adm::AdmCommand),
    /// Worldlines and mass shells
    #[command(subcommand)]
    Particle(commands::particle::ParticleCommand),
    /// Six-dimensional fields reduced to tau-evolution
    #[command(subcommand)]
    Field(commands::field::FieldCommand),
    /// Minisuperspace wave-function evolution
    #[command(subcommand)]
    Wdw(commands::wdw::WdwCommand),
    /// Run every acceptance check and write a manifest
    VerifyAll(verify::VerifyArgs),
}

/// Shared state for one invocation.
#[derive(Clone, Debug)]
pub struct Context {
    pub out: output::OutDir,
    pub fault: Option<Fault>,
}

/// Runs a parsed command; `Ok(true)` when all checks passed.
pub fn run(cli: Cli) -> CliResult<bool> {
    let ctx = Context { out: output::OutDir::from_env(), fault: cli.fault };
    match cli.command {
        Command::Clifford(c) => commands::clifford::run(c, &ctx),
        Command::Adm(c) => commands::adm::run(c, &ctx),
        Command::Particle(c) => commands::particle::run(c, &ctx),
        Command::Field(c) => commands::field::run(c, &ctx),
        Command::Wdw(c) => commands::wdw::run(c, &ctx),
        Command::VerifyAll(a) => verify::run(a, &ctx),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let start = Instant::now();
    let code = match run(cli) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("taulab: {e}");
            EXIT_CONFIG
        }
    };
    eprintln!("taulab: finished in {:.3} s", start.elapsed().as_secs_f64());
    code
}
