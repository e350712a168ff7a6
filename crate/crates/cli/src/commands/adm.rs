use std::path::PathBuf;

use clap::{Args, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use taulab_core::adm::constraints_at;

use super::{csv_row, finish, RunRecord};
use crate::config::Resolver;
use crate::error::CliResult;
use crate::manifest::CheckRecord;
use crate::metric_config::load_metric;
use crate::output::Artifacts;
use crate::Context;

#[derive(Debug, Subcommand)]
pub enum AdmCommand {
    /// Evaluate H, H_mu and the kinetic/trace identities at sample points
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Metric config file, or a bare family name (flat, conformal, tau-diagonal, kasner5)
    #[arg(long)]
    pub metric: String,
    #[arg(long, default_value = "adm_check.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Key-value file supplying defaults for the flags below
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Sample points are drawn from [-spread, spread]^4
    #[arg(long)]
    pub spread: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn run(cmd: AdmCommand, ctx: &Context) -> CliResult<bool> {
    let AdmCommand::Check(args) = cmd;
    let mut r = Resolver::new(args.config.as_deref())?;
    let samples = r.get("samples", args.samples, 8usize)?;
    let seed = r.get("seed", args.seed, 0u64)?;
    let tau = r.get("tau", args.tau, 1.0)?;
    let spread = r.get("spread", args.spread, 0.5)?;
    let tol = r.get("tol", args.tol, 1e-10)?;
    let (metric, echo) = load_metric(&args.metric)?;
    r.extend("metric", &echo);
    let config = r.finish()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut csv = String::from("sample,tau,x0,x1,x2,x3,H,H_0,H_1,H_2,H_3,kinetic_residual,trace_residual,hamiltonian_path_gap\n");
    let (mut kin, mut trace, mut gap) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..samples {
        let x: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-spread..=spread));
        let c = constraints_at(&metric, tau, &x)?;
        let rel_gap = c.h.disagreement() / c.h.value().abs().max(1.0);
        kin = kin.max(c.kinetic_residual);
        trace = trace.max(c.trace_residual);
        gap = gap.max(rel_gap);
        let mut row = vec![k as f64, tau];
        row.extend_from_slice(&x);
        row.push(c.h.value());
        row.extend_from_slice(&c.h_mu);
        row.extend_from_slice(&[c.kinetic_residual, c.trace_residual, rel_gap]);
        csv.push_str(&csv_row(&row));
    }
    let checks = vec![
        CheckRecord::below("kinetic identity", kin, tol),
        CheckRecord::below("momentum trace law", trace, tol),
        CheckRecord::below("hamiltonian K-form vs p-form", gap, tol),
    ];
    let path = ctx.out.resolve(&args.out);
    let mut artifacts = Artifacts::new();
    artifacts.write(path.clone(), csv.as_bytes())?;
    let run = RunRecord { command: "adm check", csv: &path, manifest: args.manifest.as_deref(), config, outputs: vec![path.clone()] };
    finish(ctx, artifacts, run, checks)
}
