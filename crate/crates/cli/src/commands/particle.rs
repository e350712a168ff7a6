use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use taulab_core::particle::{geodesic_integrate, mass_shell_split, ExtraBlock, GeodesicOptions};

use super::{csv_row, finish, RunRecord};
use crate::config::{Floats, Resolver};
use crate::error::{CliError, CliResult};
use crate::manifest::CheckRecord;
use crate::metric_config::load_metric;
use crate::output::Artifacts;
use crate::Context;

#[derive(Debug, Subcommand)]
pub enum ParticleCommand {
    /// Integrate a 5D geodesic and record X^M, P_M and the shell residual
    Geodesic(GeodesicArgs),
    /// Print the 4D mass squared m^2 for given extra momenta
    Shell(ShellArgs),
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long)]
    pub metric: String,
    /// Initial position (tau, x0, x1, x2, x3)
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<Floats>,
    /// Initial velocity; rescaled to unit norm unless null
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<Floats>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, default_value = "geodesic.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Bound on |G^MN P_M P_N - m^2| relative to max(1, |m^2|)
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Block {
    LightCone,
    Diagonal,
}

impl From<Block> for ExtraBlock {
    fn from(b: Block) -> Self {
        match b {
            Block::LightCone => ExtraBlock::LightCone,
            Block::Diagonal => ExtraBlock::Diagonal,
        }
    }
}

#[derive(Debug, Args)]
pub struct ShellArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p5: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub p6: f64,
    #[arg(long)]
    pub mass6: f64,
    #[arg(long, value_enum, default_value_t = Block::LightCone)]
    pub block: Block,
}

pub fn run(cmd: ParticleCommand, ctx: &Context) -> CliResult<bool> {
    match cmd {
        ParticleCommand::Geodesic(a) => geodesic(a, ctx),
        ParticleCommand::Shell(a) => shell(a),
    }
}

fn geodesic(args: GeodesicArgs, ctx: &Context) -> CliResult<bool> {
    let mut r = Resolver::new(args.config.as_deref())?;
    let x0: [f64; 5] = r.get("x0", args.x0, Floats(vec![1.0, 0.0, 0.0, 0.0, 0.0]))?.exact("x0")?;
    let v0: [f64; 5] = r.get("v0", args.v0, Floats(vec![1.0, 0.3, 0.2, -0.1, 0.1]))?.exact("v0")?;
    let steps = r.get("steps", args.steps, 1000usize)?;
    let h = r.get("h", args.h, 1e-3)?;
    let tol = r.get("tol", args.tol, 1e-8)?;
    let (metric, echo) = load_metric(&args.metric)?;
    r.extend("metric", &echo);
    let config = r.finish()?;
    if steps == 0 || !(h > 0.0) {
        return Err(CliError::config("geodesic needs steps >= 1 and h > 0"));
    }

    let wl = geodesic_integrate(&metric, x0, v0, GeodesicOptions::new(steps, h))?;
    let residuals = wl.shell_residuals(&metric)?;
    let mut csv = String::from("sigma,X5,X0,X1,X2,X3,P5,P0,P1,P2,P3,shell_residual\n");
    for (s, res) in wl.states.iter().zip(&residuals) {
        let mut row = vec![s.sigma];
        row.extend_from_slice(&s.x);
        row.extend_from_slice(&s.p);
        row.push(*res);
        csv.push_str(&csv_row(&row));
    }
    let worst = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs())) / wl.mass_sq.abs().max(1.0);
    let checks = vec![CheckRecord::below("mass shell conserved", worst, tol)];
    let path = ctx.out.resolve(&args.out);
    let mut artifacts = Artifacts::new();
    artifacts.write(path.clone(), csv.as_bytes())?;
    let run = RunRecord { command: "particle geodesic", csv: &path, manifest: args.manifest.as_deref(), config, outputs: vec![path.clone()] };
    finish(ctx, artifacts, run, checks)
}

fn shell(args: ShellArgs) -> CliResult<bool> {
    for (name, v) in [("p5", args.p5), ("p6", args.p6), ("mass6", args.mass6)] {
        if !v.is_finite() {
            return Err(CliError::config(format!("{name} must be finite")));
        }
    }
    if args.mass6 < 0.0 {
        return Err(CliError::config("mass6 must be non-negative"));
    }
    let split = mass_shell_split(args.p5, args.p6, args.mass6, args.block.into());
    println!("m^2 = {}", split.m2);
    if split.tachyonic {
        println!("tachyonic: m^2 < 0");
    }
    Ok(true)
}
