use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Subcommand, ValueEnum};
use taulab_core::wdw::{reduced_hamiltonian, BetaGrid, MidpointStepper, MinisuperspaceConfig, Wavepacket, LEAKAGE_THRESHOLD};

use super::{csv_row, finish, RunRecord};
use crate::config::{Floats, Range, Resolver};
use crate::error::{CliError, CliResult};
use crate::manifest::CheckRecord;
use crate::output::Artifacts;
use crate::Context;

#[derive(Debug, Subcommand)]
pub enum WdwCommand {
    /// Crank-Nicolson evolution of a wave packet along one direction in beta-space
    Evolve(EvolveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Modes {
    /// Overall scale, u = (1, 1, 1, 1)
    Iso,
    /// Spatial scale, u = (0, 1, 1, 1); null for the supermetric
    Spatial,
    /// Direction given by --direction
    Custom,
}

impl fmt::Display for Modes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl FromStr for Modes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Modes as ValueEnum>::from_str(s, false)
    }
}

/// `gaussian:centre,width[,k]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PacketSpec {
    pub centre: f64,
    pub width: f64,
    pub k: f64,
}

impl FromStr for PacketSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s.strip_prefix("gaussian:").ok_or_else(|| format!("expected gaussian:centre,width[,k], got `{s}`"))?;
        let v: Floats = rest.parse()?;
        match v.0[..] {
            [centre, width] => Ok(PacketSpec { centre, width, k: 0.0 }),
            [centre, width, k] => Ok(PacketSpec { centre, width, k }),
            _ => Err(format!("expected gaussian:centre,width[,k], got `{s}`")),
        }
    }
}

impl fmt::Display for PacketSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gaussian:{},{},{}", self.centre, self.width, self.k)
    }
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, value_enum)]
    pub modes: Option<Modes>,
    /// Direction u in beta-space for --modes custom
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<Floats>,
    /// Base point of the line in beta-space
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<Floats>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta_range: Option<Range>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub volume: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub init: Option<PacketSpec>,
    /// Largest accepted dt * sqrt(<H psi|H psi>/<psi|psi>)
    #[arg(long)]
    pub phase_limit: Option<f64>,
    /// Bound on the norm drift
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value = "wdw_evolve.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub fn run(cmd: WdwCommand, ctx: &Context) -> CliResult<bool> {
    let WdwCommand::Evolve(args) = cmd;
    let mut r = Resolver::new(args.config.as_deref())?;
    let modes = r.get("modes", args.modes, Modes::Iso)?;
    let direction: [f64; 4] = match modes {
        Modes::Iso => [1.0; 4],
        Modes::Spatial => [0.0, 1.0, 1.0, 1.0],
        Modes::Custom => r
            .get_opt("direction", args.direction)?
            .ok_or_else(|| CliError::config("--modes custom needs --direction"))?
            .exact("direction")?,
    };
    let base: [f64; 4] = r.get("base", args.base, Floats(vec![0.0; 4]))?.exact("base")?;
    let n = r.get("n", args.n, 1024usize)?;
    let range = r.get("beta_range", args.beta_range, Range(-8.0, 8.0))?;
    let kappa = r.get("kappa", args.kappa, 1.0)?;
    let volume = r.get("volume", args.volume, 1.0)?;
    let dt = r.get("dt", args.dt, 1e-3)?;
    let steps = r.get("steps", args.steps, 5000usize)?;
    let init = r.get("init", args.init, PacketSpec { centre: 1.0, width: 0.5, k: 0.0 })?;
    let limit = r.get("phase_limit", args.phase_limit, 0.5)?;
    let tol = r.get("tol", args.tol, 1e-10)?;
    let config = r.finish()?;

    let cfg = MinisuperspaceConfig { base, direction, kappa, volume };
    let grid = BetaGrid::new(range.0, range.1, n)?;
    let ham = reduced_hamiltonian(&cfg, grid)?;
    let mut packet = Wavepacket::gaussian(grid, init.centre, init.width, init.k)?;
    let stepper = MidpointStepper::new(ham, dt)?;
    stepper.check_step(&packet, limit)?;

    let n0 = packet.norm();
    let mut csv = String::from("tau,norm,mean_beta,mean_beta2,leakage\n");
    let (mut drift, mut leak) = (0.0f64, 0.0f64);
    stepper.run(&mut packet, steps, |_, p| {
        let norm = p.norm();
        drift = drift.max((norm - n0).abs());
        leak = leak.max(p.leakage());
        csv.push_str(&csv_row(&[p.tau, norm, p.expectation(|s| s), p.expectation(|s| s * s), p.leakage()]));
        Ok(())
    })?;
    let checks = vec![
        CheckRecord::below("norm conserved", drift, tol),
        CheckRecord::below("boundary leakage", leak, LEAKAGE_THRESHOLD),
    ];
    let path = ctx.out.resolve(&args.out);
    let mut artifacts = Artifacts::new();
    artifacts.write(path.clone(), csv.as_bytes())?;
    let run = RunRecord { command: "wdw evolve", csv: &path, manifest: args.manifest.as_deref(), config, outputs: vec![path.clone()] };
    finish(ctx, artifacts, run, checks)
}
