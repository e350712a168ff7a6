use std::fmt;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Subcommand};
use num_complex::Complex;
use taulab_core::fields::{observables, write_snapshot, LatticeField, Periodic, ReductionParams, StueckelbergEvolver};

use super::{csv_row, finish, RunRecord};
use crate::config::Resolver;
use crate::error::{CliError, CliResult};
use crate::manifest::CheckRecord;
use crate::output::Artifacts;
use crate::Context;

#[derive(Debug, Subcommand)]
pub enum FieldCommand {
    /// Evolve initial data in tau and record norm and moments per step
    Evolve(EvolveArgs),
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Lattice dimension (1 to 4); axis 0 is x^0
    #[arg(long)]
    pub dim: Option<usize>,
    /// Points per axis
    #[arg(long)]
    pub n: Option<usize>,
    /// Box length per axis
    #[arg(long)]
    pub length: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub mass6: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// `gaussian[:width=W,centre=C0/C1/..,k=K0/K1/..]` or `plane:N0/N1/..`
    #[arg(long)]
    pub init: Option<InitSpec>,
    #[arg(long, default_value = "field_evolve.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Directory for binary field snapshots
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
    /// Write a snapshot every this many steps
    #[arg(long)]
    pub snapshot_every: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Bound on the relative norm drift
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Initial data for `field evolve`.
#[derive(Clone, Debug, PartialEq)]
pub enum InitSpec {
    Gaussian { width: f64, centre: Vec<f64>, k: Vec<f64> },
    /// Lattice plane wave with the given integer mode numbers.
    Plane(Vec<i64>),
}

fn slash_list<T: FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    s.split('/').map(|t| t.trim().parse::<T>().map_err(|e| format!("`{t}`: {e}"))).collect()
}

fn join_slash<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("/")
}

impl FromStr for InitSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "gaussian" => {
                let (mut width, mut centre, mut k) = (1.0, Vec::new(), Vec::new());
                for item in rest.split(',').filter(|t| !t.trim().is_empty()) {
                    let (key, val) = item.split_once('=').ok_or_else(|| format!("expected key=value in `{item}`"))?;
                    match key.trim() {
                        "width" => width = val.trim().parse().map_err(|e| format!("width: {e}"))?,
                        "centre" | "center" => centre = slash_list(val)?,
                        "k" => k = slash_list(val)?,
                        other => return Err(format!("unknown gaussian parameter `{other}`")),
                    }
                }
                Ok(InitSpec::Gaussian { width, centre, k })
            }
            "plane" => Ok(InitSpec::Plane(slash_list(rest)?)),
            other => Err(format!("unknown initial data `{other}`; expected gaussian or plane")),
        }
    }
}

impl fmt::Display for InitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitSpec::Gaussian { width, centre, k } => {
                write!(f, "gaussian:width={width}")?;
                if !centre.is_empty() {
                    write!(f, ",centre={}", join_slash(centre))?;
                }
                if !k.is_empty() {
                    write!(f, ",k={}", join_slash(k))?;
                }
                Ok(())
            }
            InitSpec::Plane(n) => write!(f, "plane:{}", join_slash(n)),
        }
    }
}

fn padded(v: &[f64], d: usize, what: &str) -> CliResult<Vec<f64>> {
    match v.len() {
        0 => Ok(vec![0.0; d]),
        n if n == d => Ok(v.to_vec()),
        n => Err(CliError::config(format!("{what} has {n} components, lattice has {d}"))),
    }
}

impl InitSpec {
    pub fn build(&self, grid: Periodic<f64>) -> CliResult<LatticeField<f64>> {
        let d = grid.dim();
        match self {
            InitSpec::Gaussian { width, centre, k } => {
                let c = padded(centre, d, "centre")?;
                let k = padded(k, d, "k")?;
                Ok(LatticeField::gaussian(grid, &c, &vec![*width; d], &k)?)
            }
            InitSpec::Plane(n) => {
                if n.len() != d {
                    return Err(CliError::config(format!("plane wave needs {d} mode numbers")));
                }
                let k: Vec<f64> = n.iter().zip(&grid.lengths).map(|(&m, l)| std::f64::consts::TAU * m as f64 / l).collect();
                let amp = 1.0 / grid.lengths.iter().product::<f64>().sqrt();
                Ok(LatticeField::from_fn(grid, |x| {
                    Complex::from_polar(amp, k.iter().zip(x).map(|(a, b)| a * b).sum())
                }))
            }
        }
    }
}

pub fn run(cmd: FieldCommand, ctx: &Context) -> CliResult<bool> {
    let FieldCommand::Evolve(args) = cmd;
    let mut r = Resolver::new(args.config.as_deref())?;
    let dim = r.get("dim", args.dim, 2usize)?;
    let n = r.get("n", args.n, 256usize)?;
    let length = r.get("length", args.length, 40.0)?;
    let lambda = r.get("lambda", args.lambda, 1.0)?;
    let mass6 = r.get("mass6", args.mass6, 0.0)?;
    let tau = r.get("tau", args.tau, 10.0)?;
    let steps = r.get("steps", args.steps, 100usize)?;
    let init = r.get("init", args.init, InitSpec::Gaussian { width: 1.0, centre: vec![], k: vec![] })?;
    let tol = r.get("tol", args.tol, 1e-12)?;
    let snapshots = r.get_opt("snapshots", args.snapshots.map(|p| p.display().to_string()))?;
    let every = r.get("snapshot_every", args.snapshot_every, 1usize)?;
    let config = r.finish()?;
    if !(1..=4).contains(&dim) || n < 2 || every == 0 {
        return Err(CliError::config("field evolve needs 1 <= dim <= 4, n >= 2 and snapshot_every >= 1"));
    }

    let grid = Periodic::new(vec![n; dim], vec![length; dim])?;
    let psi0 = init.build(grid)?;
    let ev = StueckelbergEvolver::new(psi0, ReductionParams::new(lambda, mass6)?)?;
    let n0 = ev.initial().norm();

    let path = ctx.out.resolve(&args.out);
    let snap_dir = snapshots.map(|s| ctx.out.resolve(&PathBuf::from(s)));
    let mut artifacts = Artifacts::new();
    let mut outputs = vec![path.clone()];
    let mut csv = String::from("tau,norm,mean_x,mean_t,spread\n");
    let mut drift = 0.0f64;
    let dt = if steps == 0 { 0.0 } else { tau / steps as f64 };
    for k in 0..=steps {
        let t = dt * k as f64;
        let psi = ev.evolve_to(t);
        let o = observables(&psi);
        drift = drift.max((o.norm - n0).abs() / n0);
        csv.push_str(&csv_row(&[t, o.norm, o.mean_x, o.mean_t, o.spread]));
        if let (Some(dir), true) = (&snap_dir, k % every == 0) {
            let dest = dir.join(format!("snapshot_{k:06}.bin"));
            outputs.push(dest.clone());
            let mut w = BufWriter::new(artifacts.create(dest.clone())?);
            write_snapshot(&mut w, &psi, t).and_then(|_| w.flush()).map_err(|e| CliError::io(&dest, e))?;
        }
    }
    artifacts.write(path.clone(), csv.as_bytes())?;
    let checks = vec![CheckRecord::below("norm conserved", drift, tol)];
    let run = RunRecord { command: "field evolve", csv: &path, manifest: args.manifest.as_deref(), config, outputs };
    finish(ctx, artifacts, run, checks)
}
