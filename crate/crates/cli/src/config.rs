//! Flat key-value run configuration. Command-line flags win over file values.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use toml::{Table, Value};

/// Raised for anything wrong with the user's configuration (exit code 2).
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ConfigError(msg.into()).into())
}

/// Keys are matched case-insensitively with '-' and '_' interchangeable.
fn normalise(key: &str) -> String {
    key.to_ascii_lowercase().replace('-', "_")
}

#[derive(Debug, Default)]
pub struct Resolver {
    file: Table,
}

impl Resolver {
    /// Loads `path` (if any) and rejects keys outside `allowed`.
    pub fn load(path: Option<&Path>, allowed: &[&str]) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text =
            fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        let raw: Table = text
            .parse()
            .map_err(|e| ConfigError(format!("config {} is not valid TOML: {e}", path.display())))?;
        let allowed: Vec<String> = allowed.iter().map(|k| normalise(k)).collect();
        let mut file = Table::new();
        for (k, v) in raw {
            let key = normalise(&k);
            if !allowed.contains(&key) {
                return config_err(format!("unknown config key '{k}' (allowed: {})", allowed.join(", ")));
            }
            if matches!(v, Value::Table(_) | Value::Array(_)) {
                return config_err(format!("config key '{k}' must be a scalar"));
            }
            file.insert(key, v);
        }
        log::debug!("loaded {} config keys from {}", file.len(), path.display());
        Ok(Self { file })
    }

    fn raw(&self, key: &str) -> Option<&Value> {
        self.file.get(&normalise(key))
    }

    pub fn opt_f64(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Float(x)) => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(Value::String(s)) => s
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| ConfigError(format!("config key '{key}': '{s}' is not a number")).into()),
            Some(other) => config_err(format!("config key '{key}' must be a number, got {other}")),
        }
    }

    pub fn f64_or(&self, key: &str, flag: Option<f64>, default: f64) -> Result<f64> {
        Ok(self.opt_f64(key, flag)?.unwrap_or(default))
    }

    pub fn opt_i64(&self, key: &str, flag: Option<i64>) -> Result<Option<i64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Integer(i)) => Ok(Some(*i)),
            Some(Value::String(s)) => s
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| ConfigError(format!("config key '{key}': '{s}' is not an integer")).into()),
            Some(other) => config_err(format!("config key '{key}' must be an integer, got {other}")),
        }
    }

    pub fn i64_or(&self, key: &str, flag: Option<i64>, default: i64) -> Result<i64> {
        Ok(self.opt_i64(key, flag)?.unwrap_or(default))
    }

    pub fn usize_or(&self, key: &str, flag: Option<usize>, default: usize) -> Result<usize> {
        let v = self.i64_or(key, flag.map(|v| v as i64), default as i64)?;
        usize::try_from(v).map_err(|_| ConfigError(format!("--{key} must be non-negative, got {v}")).into())
    }

    /// Strings; numbers in the file are accepted verbatim (for rationals).
    pub fn opt_str(&self, key: &str, flag: Option<String>) -> Result<Option<String>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Integer(i)) => Ok(Some(i.to_string())),
            Some(Value::Float(x)) => Ok(Some(x.to_string())),
            Some(other) => config_err(format!("config key '{key}' must be a string, got {other}")),
        }
    }

    pub fn str_or(&self, key: &str, flag: Option<String>, default: &str) -> Result<String> {
        Ok(self.opt_str(key, flag)?.unwrap_or_else(|| default.to_string()))
    }

    /// A switch is on when given as a flag or set to true in the file.
    pub fn switch(&self, key: &str, flag: bool) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        match self.raw(key) {
            None => Ok(false),
            Some(Value::Boolean(b)) => Ok(*b),
            Some(other) => config_err(format!("config key '{key}' must be true or false, got {other}")),
        }
    }
}

/// Picks one of `choices` (case-insensitive) or fails with a config error.
pub fn choose<'a>(key: &str, value: &str, choices: &[&'a str]) -> Result<&'a str> {
    let v = value.to_ascii_lowercase();
    match choices.iter().find(|c| **c == v) {
        Some(c) => Ok(c),
        None => bail!(ConfigError(format!(
            "--{key}: '{value}' is not one of {}",
            choices.join(", ")
        ))),
    }
}

pub fn ensure_parent_exists(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        if !parent.is_dir() {
            return config_err(format!("output directory {} does not exist", parent.display()));
        }
    }
    Ok(())
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display())))
        .with_context(|| format!("writing output file {}", path.display()))
}
