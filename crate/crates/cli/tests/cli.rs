use std::path::Path;
use std::process::{Command, Output};

use taulab::verify::run_checks;
use taulab::Fault;
use tempfile::TempDir;

fn taulab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taulab")).args(args).env("TAULAB_OUT_DIR", dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> =
        std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    names
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap_or_default().to_string()
}

fn manifest(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn unknown_flag_exits_two_without_output() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["field", "evolve", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(files(dir.path()).is_empty());
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "n = 32\nwidht = 2\n").unwrap();
    let o = taulab(dir.path(), &["field", "evolve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("widht"));
    assert_eq!(files(dir.path()), vec!["run.cfg"]);
}

#[test]
fn flags_override_config_values() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "n = 16\nsteps = 3\n").unwrap();
    let o = taulab(dir.path(), &["field", "evolve", "--config", cfg.to_str().unwrap(), "--steps", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let m = manifest(&dir.path().join("field_evolve.manifest.json"));
    assert_eq!(m["config"]["n"], "16");
    assert_eq!(m["config"]["steps"], "5");
    let rows = std::fs::read_to_string(dir.path().join("field_evolve.csv")).unwrap().lines().count();
    assert_eq!(rows, 1 + 6);
}

#[test]
fn clifford_table_lists_sixteen_blades() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["clifford", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("signature (8,8)"));
    let csv = std::fs::read_to_string(dir.path().join("clifford_table.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "blade_mask,grade,norm_sign");
    assert_eq!(rows.len(), 17);
    let plus = rows[1..].iter().filter(|r| r.ends_with(",1")).count();
    assert_eq!(plus, 8);
    assert_eq!(manifest(&dir.path().join("clifford_table.manifest.json"))["passed"], true);
}

#[test]
fn sign_fault_fails_the_sweep() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["--fault", "clifford-sign", "verify-all"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().next().unwrap().starts_with("FAIL  1"));
    assert!(out.lines().nth(1).unwrap().starts_with("FAIL  2"));
    let m = manifest(&dir.path().join("verify-all.manifest.json"));
    assert_eq!(m["passed"], false);
}

#[test]
fn sweep_passes_for_many_seeds() {
    for seed in 0..10 {
        let checks = run_checks(seed, None);
        assert_eq!(checks.len(), 16);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| &c.name).collect();
        assert!(failed.is_empty(), "seed {seed}: {failed:?}");
    }
    assert!(!run_checks(0, Some(Fault::CliffordSign))[0].passed);
}

#[test]
fn verify_all_reports_sixteen_lines() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["verify-all", "--seed", "7", "--manifest", "sweep.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 16);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
    let m = manifest(&dir.path().join("sweep.json"));
    assert_eq!(m["config"]["seed"], "7");
    assert_eq!(m["checks"].as_array().unwrap().len(), 16);
    assert!(m.get("elapsed").is_none());
}

#[test]
fn adm_check_on_each_family() {
    for family in ["flat", "conformal", "tau-diagonal", "kasner5"] {
        let dir = TempDir::new().unwrap();
        let o = taulab(dir.path(), &["adm", "check", "--metric", family, "--samples", "3"]);
        assert_eq!(o.status.code(), Some(0), "{family}: {}", stdout(&o));
        let csv = dir.path().join("adm_check.csv");
        assert!(header(&csv).starts_with("sample,tau,x0,x1,x2,x3,H,H_0"));
        assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 4);
    }
}

#[test]
fn adm_check_reads_metric_files() {
    let dir = TempDir::new().unwrap();
    let metric = dir.path().join("metric.cfg");
    std::fs::write(&metric, "family = kasner5\nexponents = 0.5,0.5,0.5,-0.5\n").unwrap();
    let o = taulab(dir.path(), &["adm", "check", "--metric", metric.to_str().unwrap(), "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::write(&metric, "family = conformal\namplitude = 1.5\n").unwrap();
    let o = taulab(dir.path(), &["adm", "check", "--metric", metric.to_str().unwrap(), "--out", "bad.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("bad.csv").exists());
}

#[test]
fn geodesic_run_keeps_the_shell() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["particle", "geodesic", "--metric", "conformal", "--steps", "200", "--out", "wl.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let csv = dir.path().join("wl.csv");
    assert_eq!(header(&csv), "sigma,X5,X0,X1,X2,X3,P5,P0,P1,P2,P3,shell_residual");
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 202);
    assert!(dir.path().join("wl.manifest.json").exists());
}

#[test]
fn mass_shell_split_is_printed() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["particle", "shell", "--p5", "1", "--p6", "2", "--mass6", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "m^2 = 4");
    let o = taulab(dir.path(), &["particle", "shell", "--p5", "-1", "--p6", "2", "--mass6", "0", "--block", "diagonal"]);
    assert!(stdout(&o).contains("tachyonic"));
}

#[test]
fn field_evolution_writes_snapshots() {
    let dir = TempDir::new().unwrap();
    let o = taulab(
        dir.path(),
        &["field", "evolve", "--n", "32", "--steps", "4", "--snapshots", "snaps", "--snapshot-every", "2", "--init", "plane:1/-2"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(header(&dir.path().join("field_evolve.csv")), "tau,norm,mean_x,mean_t,spread");
    assert_eq!(files(&dir.path().join("snaps")), vec!["snapshot_000000.bin", "snapshot_000002.bin", "snapshot_000004.bin"]);
    let bytes = std::fs::read(dir.path().join("snaps/snapshot_000004.bin")).unwrap();
    let (shape, tau, values) = taulab_core::fields::read_snapshot(&mut bytes.as_slice()).unwrap();
    assert_eq!(shape, vec![32, 32]);
    assert_eq!(tau, 10.0);
    // default box length 40 per axis
    let norm = (40.0f64 / 32.0).powi(2) * values.iter().map(|v| v.norm_sqr()).sum::<f64>();
    assert!((norm - 1.0).abs() < 1e-12, "{norm}");
}

#[test]
fn wdw_evolution_conserves_norm() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["wdw", "evolve", "--steps", "200", "--n", "256"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let csv = dir.path().join("wdw_evolve.csv");
    assert_eq!(header(&csv), "tau,norm,mean_beta,mean_beta2,leakage");
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 202);
}

#[test]
fn degenerate_and_oversized_wdw_runs_are_refused() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["wdw", "evolve", "--modes", "spatial", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("null"));
    let o = taulab(dir.path(), &["wdw", "evolve", "--dt", "50", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(files(dir.path()).is_empty());
}

#[test]
fn version_carries_the_revision() {
    let dir = TempDir::new().unwrap();
    let o = taulab(dir.path(), &["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(&format!("taulab {}-", env!("CARGO_PKG_VERSION"))));
}
