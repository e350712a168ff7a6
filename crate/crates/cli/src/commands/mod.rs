pub mod adm;
pub mod clifford;
pub mod field;
pub mod particle;
pub mod wdw;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::CliResult;
use crate::manifest::{CheckRecord, RunManifest};
use crate::output::{manifest_beside, Artifacts};
use crate::Context;

/// What a finished subcommand produced.
pub(crate) struct RunRecord<'a> {
    pub command: &'a str,
    pub csv: &'a Path,
    pub manifest: Option<&'a Path>,
    pub config: BTreeMap<String, String>,
    pub outputs: Vec<PathBuf>,
}

/// Stages the manifest next to the CSV, commits everything, reports checks
/// on stdout and returns whether they all passed.
pub(crate) fn finish(ctx: &Context, mut artifacts: Artifacts, run: RunRecord<'_>, checks: Vec<CheckRecord>) -> CliResult<bool> {
    let manifest_path = run.manifest.map(|m| ctx.out.resolve(m)).unwrap_or_else(|| manifest_beside(run.csv));
    let names = run.outputs.iter().map(|p| p.display().to_string()).collect();
    let m = RunManifest::new(run.command, run.config, names, checks);
    artifacts.write(manifest_path, m.to_json().as_bytes())?;
    artifacts.commit()?;
    for c in &m.checks {
        println!("{} {} residual={:e} tolerance={:e}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.residual, c.tolerance);
    }
    Ok(m.passed)
}

/// Formats a CSV row with shortest round-trip floats.
pub(crate) fn csv_row(values: &[f64]) -> String {
    let mut s = values.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}
