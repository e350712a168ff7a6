//! Metric configuration files naming one of the built-in families.
//!
//! ```text
//! family = kasner5
//! exponents = 0.5, 0.5, 0.5, -0.5
//! ```
//!
//! A bare family name in place of a path selects that family with its
//! default parameters.

use std::collections::BTreeMap;
use std::path::Path;

use taulab_core::adm::MetricFamily;

use crate::config::{read_key_values, Floats};
use crate::error::{CliError, CliResult};

pub const FAMILIES: [&str; 4] = ["flat", "conformal", "tau-diagonal", "kasner5"];

fn take<T: std::str::FromStr>(kv: &mut BTreeMap<String, String>, key: &str, default: T) -> CliResult<T>
where
    T::Err: std::fmt::Display,
{
    match kv.remove(key) {
        Some(v) => v.parse().map_err(|e| CliError::config(format!("metric key `{key}`: {e}"))),
        None => Ok(default),
    }
}

fn take4(kv: &mut BTreeMap<String, String>, key: &str, default: [f64; 4]) -> CliResult<[f64; 4]> {
    take(kv, key, Floats(default.to_vec()))?.exact(key)
}

/// Builds a family from parsed keys and returns it with the fully resolved
/// parameter set.
pub fn metric_from_keys(mut kv: BTreeMap<String, String>) -> CliResult<(MetricFamily<f64>, BTreeMap<String, String>)> {
    let family = kv.remove("family").ok_or_else(|| CliError::config("metric config needs a `family` key"))?;
    let mut echo = BTreeMap::new();
    let fam = match family.as_str() {
        "flat" => {
            let lapse = take(&mut kv, "lapse", 1.0)?;
            let shift = take4(&mut kv, "shift", [0.0; 4])?;
            echo.insert("lapse".into(), lapse.to_string());
            echo.insert("shift".into(), Floats(shift.to_vec()).to_string());
            MetricFamily::Flat { lapse, shift }
        }
        "conformal" => {
            let amplitude: f64 = take(&mut kv, "amplitude", 0.2)?;
            let wavenumber = take(&mut kv, "wavenumber", 1.0)?;
            if amplitude.abs() >= 1.0 {
                return Err(CliError::config("conformal amplitude must satisfy |amplitude| < 1"));
            }
            echo.insert("amplitude".into(), amplitude.to_string());
            echo.insert("wavenumber".into(), wavenumber.to_string());
            MetricFamily::Conformal { amplitude, wavenumber }
        }
        "tau-diagonal" => {
            let rate = take(&mut kv, "rate", 1.0)?;
            echo.insert("rate".into(), rate.to_string());
            MetricFamily::TauDiagonal { rate }
        }
        "kasner5" => {
            let exponents = take4(&mut kv, "exponents", [0.5, 0.5, 0.5, -0.5])?;
            echo.insert("exponents".into(), Floats(exponents.to_vec()).to_string());
            MetricFamily::Kasner5 { exponents }
        }
        other => {
            return Err(CliError::config(format!("unknown metric family `{other}`; expected one of {}", FAMILIES.join(", "))))
        }
    };
    if let Some(k) = kv.keys().next() {
        return Err(CliError::config(format!("unknown key `{k}` for metric family {family}")));
    }
    echo.insert("family".into(), family);
    Ok((fam, echo))
}

pub fn load_metric(arg: &str) -> CliResult<(MetricFamily<f64>, BTreeMap<String, String>)> {
    let path = Path::new(arg);
    if path.is_file() {
        return metric_from_keys(read_key_values(path)?);
    }
    if FAMILIES.contains(&arg) {
        return metric_from_keys(BTreeMap::from([("family".to_string(), arg.to_string())]));
    }
    Err(CliError::config(format!("metric config `{arg}` is neither a file nor a family name")))
}
