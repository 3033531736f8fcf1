//! Optional configuration file and the FIBKIT_MAX_N environment cap.
//!
//! The config file is a JSON object whose keys are the long flag names it
//! defaults: format, latex, jobs, s, t, q, and max-n. Flags given on the
//! command line always win; config values fill in only where the flag was
//! omitted and the subcommand actually has it.

use std::path::Path;

use serde::Deserialize;

use crate::output::Format;
use crate::CliError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub latex: Option<bool>,
    pub jobs: Option<usize>,
    pub s: Option<i64>,
    pub t: Option<i64>,
    pub q: Option<i64>,
    #[serde(rename = "max-n")]
    pub max_n: Option<u64>,
}

pub fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read config {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("bad config {}: {e}", path.display()))
    })
}

/// Sweep-size cap from the environment. Built-in sweep defaults shrink to
/// the cap; explicitly requested sizes beyond it are rejected instead of
/// being silently trimmed.
pub fn env_cap() -> Result<Option<u64>, CliError> {
    match std::env::var("FIBKIT_MAX_N") {
        Err(_) => Ok(None),
        Ok(raw) => match raw.parse::<u64>() {
            Ok(v) if v >= 1 => Ok(Some(v)),
            _ => Err(CliError::Usage(format!(
                "FIBKIT_MAX_N must be a positive integer, got `{raw}`"
            ))),
        },
    }
}

/// min(default, cap) for sweeps the user did not size explicitly.
pub fn capped(default: u64, cap: Option<u64>) -> u64 {
    match cap {
        Some(c) => default.min(c),
        None => default,
    }
}

/// Reject an explicitly requested sweep size that exceeds the cap.
pub fn check_explicit(name: &str, value: u64, cap: Option<u64>) -> Result<(), CliError> {
    if let Some(c) = cap {
        if value > c {
            return Err(CliError::Usage(format!(
                "{name} = {value} exceeds FIBKIT_MAX_N = {c}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_arithmetic() {
        assert_eq!(capped(5000, None), 5000);
        assert_eq!(capped(5000, Some(100)), 100);
        assert_eq!(capped(24, Some(100)), 24);
        assert!(check_explicit("--upto", 50, Some(10)).is_err());
        assert!(check_explicit("--upto", 50, Some(50)).is_ok());
        assert!(check_explicit("--upto", 50, None).is_ok());
    }

    #[test]
    fn config_parses_known_keys() {
        let cfg: FileConfig =
            serde_json::from_str(r#"{"format":"json","s":2,"t":-1,"max-n":64}"#).unwrap();
        assert!(matches!(cfg.format, Some(Format::Json)));
        assert_eq!(cfg.s, Some(2));
        assert_eq!(cfg.t, Some(-1));
        assert_eq!(cfg.max_n, Some(64));
        assert!(serde_json::from_str::<FileConfig>(r#"{"surprise":1}"#).is_err());
    }
}
