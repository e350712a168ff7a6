use std::path::PathBuf;

use clap::{Args, Subcommand};
use taulab_core::clifford::{clifford_metric, Blade, CliffordMetric, ETA};

use super::{finish, RunRecord};
use crate::error::CliResult;
use crate::manifest::CheckRecord;
use crate::output::Artifacts;
use crate::{Context, Fault};

#[derive(Debug, Subcommand)]
pub enum CliffordCommand {
    /// Write the blade norm table (columns blade_mask, grade, norm_sign)
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value = "clifford_table.csv")]
    pub out: PathBuf,
    /// Manifest path; defaults to `<out stem>.manifest.json`
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// The blade sign table, optionally corrupted by a test fault.
pub fn sign_table(fault: Option<Fault>) -> CliffordMetric {
    let m = clifford_metric();
    match fault {
        Some(Fault::CliffordSign) => {
            let mut diag = m.diag;
            diag[Blade::PSEUDOSCALAR.index()] *= -1;
            CliffordMetric::from_diag(diag)
        }
        None => m,
    }
}

/// `∏_{i∈S} η_ii` for the blade with index set `S`.
pub fn eta_product(b: Blade) -> i8 {
    b.indices().map(|i| ETA[i]).product()
}

/// Signature and per-blade checks of a sign table.
pub fn table_checks(table: &CliffordMetric) -> Vec<CheckRecord> {
    let (p, m) = table.signature;
    let sig_off = p.abs_diff(8) + m.abs_diff(8);
    let mismatched: Vec<String> = Blade::all().filter(|&b| table.sign(b) != eta_product(b)).map(|b| b.to_string()).collect();
    let mut norms = CheckRecord::below("blade norms match eta products", mismatched.len() as f64, 0.0);
    if !mismatched.is_empty() {
        norms = norms.with_detail(format!("mismatched blades: {}", mismatched.join(" ")));
    }
    vec![CheckRecord::below("signature (8,8)", sig_off as f64, 0.0).with_detail(format!("({p},{m})")), norms]
}

pub fn run(cmd: CliffordCommand, ctx: &Context) -> CliResult<bool> {
    let CliffordCommand::Table(args) = cmd;
    let table = sign_table(ctx.fault);
    let mut csv = String::from("blade_mask,grade,norm_sign\n");
    for b in Blade::all() {
        csv.push_str(&format!("{},{},{}\n", b.mask(), b.grade(), table.sign(b)));
    }
    let path = ctx.out.resolve(&args.out);
    let mut artifacts = Artifacts::new();
    artifacts.write(path.clone(), csv.as_bytes())?;
    let (p, m) = table.signature;
    println!("signature ({p},{m})");
    let run = RunRecord { command: "clifford table", csv: &path, manifest: args.manifest.as_deref(), config: Default::default(), outputs: vec![path.clone()] };
    finish(ctx, artifacts, run, table_checks(&table))
}
