//! Output location and all-or-nothing artifact writing.
//!
//! Files are written to temporaries next to their destination and renamed
//! into place only by [`Artifacts::commit`]. Dropping an uncommitted set
//! deletes the temporaries, so a failed run leaves no outputs behind.

use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Environment variable overriding the directory relative output paths
/// are resolved against.
pub const OUT_DIR_ENV: &str = "TAULAB_OUT_DIR";

#[derive(Clone, Debug)]
pub struct OutDir(pub PathBuf);

impl OutDir {
    pub fn from_env() -> Self {
        OutDir(std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")))
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.0.join(p)
        }
    }
}

#[derive(Default)]
pub struct Artifacts {
    staged: Vec<(NamedTempFile, PathBuf)>,
}

impl Artifacts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Opens a staged file for `dest`.
    pub fn create(&mut self, dest: PathBuf) -> CliResult<&mut NamedTempFile> {
        if self.staged.iter().any(|(_, d)| *d == dest) {
            return Err(CliError::config(format!("output {} requested twice", dest.display())));
        }
        let dir = match dest.parent() {
            Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
            _ => PathBuf::from("."),
        };
        std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        let tmp = tempfile::Builder::new()
            .prefix(".taulab-")
            .suffix(".partial")
            .tempfile_in(&dir)
            .map_err(|e| CliError::io(&dir, e))?;
        self.staged.push((tmp, dest));
        Ok(&mut self.staged.last_mut().expect("just pushed").0)
    }

    pub fn write(&mut self, dest: PathBuf, bytes: &[u8]) -> CliResult<()> {
        let path = dest.clone();
        self.create(dest)?.write_all(bytes).map_err(|e| CliError::io(path, e))
    }

    /// Renames every staged file into place.
    pub fn commit(self) -> CliResult<Vec<PathBuf>> {
        let mut done = Vec::with_capacity(self.staged.len());
        for (mut tmp, dest) in self.staged {
            tmp.flush().map_err(|e| CliError::io(&dest, e))?;
            tmp.persist(&dest).map_err(|e| CliError::io(&dest, e.error))?;
            done.push(dest);
        }
        Ok(done)
    }
}

/// `run.csv` → `run.manifest.json`.
pub fn manifest_beside(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "run".into());
    csv.with_file_name(format!("{stem}.manifest.json"))
}
