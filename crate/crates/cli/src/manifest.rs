//! Run manifests: the resolved configuration, the build version and the
//! outcome of every check.
//!
//! Manifests deliberately carry no timestamps or durations so that reruns
//! with the same configuration are byte-identical; timing goes to stderr.

use std::collections::BTreeMap;

use serde::Serialize;

pub fn version_string() -> String {
    format!("{}-{}", env!("CARGO_PKG_VERSION"), env!("TAULAB_GIT_DESCRIBE"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Always finite; a non-finite measurement is recorded as `f64::MAX`
    /// and fails the check.
    pub residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    /// Passes when `residual <= tolerance`.
    pub fn below(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::new(name, residual, tolerance, residual <= tolerance)
    }

    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64, passed: bool) -> Self {
        let finite = residual.is_finite();
        Self {
            name: name.into(),
            passed: passed && finite,
            residual: if finite { residual } else { f64::MAX },
            tolerance,
            detail: (!finite).then(|| "non-finite residual".to_string()),
        }
    }

    pub fn failed(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, residual: f64::MAX, tolerance: 0.0, detail: Some(why.into()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: String,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl RunManifest {
    pub fn new(command: &str, config: BTreeMap<String, String>, outputs: Vec<String>, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { tool: "taulab", version: version_string(), command: command.to_string(), config, outputs, checks, passed }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
