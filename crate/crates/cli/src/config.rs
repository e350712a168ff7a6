//! Flat `key = value` configuration files layered under command-line flags.
//!
//! Blank lines and lines starting with `#` are ignored. Every key in a file
//! must be consumed by the command reading it; leftovers are reported as
//! unknown keys.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub fn parse_key_values(text: &str, source: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("{source}:{}: expected `key = value`", n + 1)))?;
        let key = k.trim().to_string();
        if key.is_empty() {
            return Err(CliError::config(format!("{source}:{}: empty key", n + 1)));
        }
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::config(format!("{source}:{}: duplicate key `{key}`", n + 1)));
        }
    }
    Ok(out)
}

pub fn read_key_values(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_key_values(&text, &path.display().to_string())
}

/// Resolves parameters as flag, then config file, then default, and keeps
/// the resolved values for the run manifest.
#[derive(Debug, Default)]
pub struct Resolver {
    file: BTreeMap<String, String>,
    used: BTreeSet<String>,
    resolved: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(config: Option<&Path>) -> CliResult<Self> {
        let file = match config {
            Some(p) => read_key_values(p)?,
            None => BTreeMap::new(),
        };
        Ok(Self { file, ..Self::default() })
    }

    fn file_value<T: FromStr>(&mut self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        let Some(raw) = self.file.get(key) else {
            return Ok(None);
        };
        self.used.insert(key.to_string());
        raw.parse()
            .map(Some)
            .map_err(|e| CliError::config(format!("config key `{key}`: {e}")))
    }

    pub fn get<T: FromStr + fmt::Display>(&mut self, key: &str, flag: Option<T>, default: T) -> CliResult<T>
    where
        T::Err: fmt::Display,
    {
        let file = self.file_value(key)?;
        let value = flag.or(file).unwrap_or(default);
        self.record(key, &value);
        Ok(value)
    }

    pub fn get_opt<T: FromStr + fmt::Display>(&mut self, key: &str, flag: Option<T>) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        let file = self.file_value(key)?;
        let value = flag.or(file);
        if let Some(v) = &value {
            self.record(key, v);
        }
        Ok(value)
    }

    pub fn record(&mut self, key: &str, value: impl fmt::Display) {
        self.resolved.insert(key.to_string(), value.to_string());
    }

    pub fn extend(&mut self, prefix: &str, values: &BTreeMap<String, String>) {
        for (k, v) in values {
            self.resolved.insert(format!("{prefix}.{k}"), v.clone());
        }
    }

    /// The resolved configuration; errors on config-file keys nobody read.
    pub fn finish(self) -> CliResult<BTreeMap<String, String>> {
        let unknown: Vec<&String> = self.file.keys().filter(|k| !self.used.contains(*k)).collect();
        if !unknown.is_empty() {
            let names: Vec<&str> = unknown.iter().map(|s| s.as_str()).collect();
            return Err(CliError::config(format!("unknown config keys: {}", names.join(", "))));
        }
        Ok(self.resolved)
    }
}

/// Comma-separated list of numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct Floats(pub Vec<f64>);

impl Floats {
    pub fn exact<const N: usize>(&self, what: &str) -> CliResult<[f64; N]> {
        self.0
            .as_slice()
            .try_into()
            .map_err(|_| CliError::config(format!("{what} needs {N} components, got {}", self.0.len())))
    }
}

impl FromStr for Floats {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
            .collect::<Result<_, _>>()
            .map(Floats)
    }
}

impl fmt::Display for Floats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `lo:hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range(pub f64, pub f64);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got `{s}`"))?;
        let lo = a.trim().parse::<f64>().map_err(|e| format!("`{a}`: {e}"))?;
        let hi = b.trim().parse::<f64>().map_err(|e| format!("`{b}`: {e}"))?;
        Ok(Range(lo, hi))
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let kv = parse_key_values("# run\n a = 1 \n\nb=x y\n", "t").unwrap();
        assert_eq!(kv["a"], "1");
        assert_eq!(kv["b"], "x y");
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(parse_key_values("a=1\na=2", "t").is_err());
        assert!(parse_key_values("just words", "t").is_err());
    }

    #[test]
    fn flag_beats_file_beats_default() {
        let mut r = Resolver { file: parse_key_values("n = 4\nm = 5", "t").unwrap(), ..Resolver::default() };
        assert_eq!(r.get("n", Some(9usize), 1).unwrap(), 9);
        assert_eq!(r.get("m", None, 1usize).unwrap(), 5);
        assert_eq!(r.get("k", None, 1usize).unwrap(), 1);
        let echo = r.finish().unwrap();
        assert_eq!(echo["n"], "9");
    }

    #[test]
    fn unread_keys_are_unknown() {
        let r = Resolver { file: parse_key_values("typo = 1", "t").unwrap(), ..Resolver::default() };
        assert!(matches!(r.finish(), Err(CliError::Config(m)) if m.contains("typo")));
    }

    #[test]
    fn list_and_range_round_trip() {
        let f: Floats = "1, -2.5,3".parse().unwrap();
        assert_eq!(f.to_string(), "1,-2.5,3");
        let r: Range = "-8:8".parse().unwrap();
        assert_eq!(r, Range(-8.0, 8.0));
        assert!("1".parse::<Range>().is_err());
    }
}
