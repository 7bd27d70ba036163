//! Merging of command-line flags, an optional TOML file, and defaults.
//!
//! The file uses the flag names as top-level keys (`max_points` for
//! `--max-points`). A value given on the command line always wins over the
//! file, and the file over the built-in default.

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use serde::Deserialize;

use crate::args::CommonArgs;
use crate::document::Format;
use crate::error::CliError;
use crate::grid::Axis;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AxisValue {
    Number(f64),
    Spec(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DimsValue {
    List(Vec<usize>),
    Spec(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub w: Option<AxisValue>,
    pub alpha: Option<AxisValue>,
    pub beta: Option<AxisValue>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub tol: Option<f64>,
    pub trunc: Option<usize>,
    pub jobs: Option<usize>,
    pub levels: Option<usize>,
    pub method: Option<String>,
    pub level: Option<usize>,
    pub order: Option<usize>,
    pub chain: Option<String>,
    pub dims: Option<DimsValue>,
    pub max_points: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("config file {}: {e}", path.display())).into())
    }
}

/// Parses an enum value taken from the config file.
pub fn parse_enum<T: ValueEnum>(key: &str, s: &str) -> Result<T, CliError> {
    T::from_str(s, false)
        .map_err(|_| CliError::Invalid(format!("config key {key}: unknown value '{s}'")))
}

/// Resolved common settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub cli: CommonArgs,
    pub file: FileConfig,
}

impl Settings {
    pub fn new(cli: CommonArgs, file: FileConfig) -> Self {
        Self { cli, file }
    }

    fn axis(
        &self,
        name: &str,
        cli: &Option<String>,
        file: &Option<AxisValue>,
    ) -> Result<Axis, CliError> {
        let axis = match (cli, file) {
            (Some(s), _) => s.parse(),
            (None, Some(AxisValue::Number(v))) if v.is_finite() => Ok(Axis::Fixed(*v)),
            (None, Some(AxisValue::Number(v))) => {
                Err(CliError::Invalid(format!("{v} is not finite")))
            }
            (None, Some(AxisValue::Spec(s))) => s.parse(),
            (None, None) => return Err(CliError::Invalid(format!("--{name} is required"))),
        };
        axis.map_err(|e| CliError::Invalid(format!("--{name}: {e}")))
    }

    pub fn axes(&self) -> Result<(Axis, Axis, Axis), CliError> {
        Ok((
            self.axis("w", &self.cli.w, &self.file.w)?,
            self.axis("alpha", &self.cli.alpha, &self.file.alpha)?,
            self.axis("beta", &self.cli.beta, &self.file.beta)?,
        ))
    }

    /// The single `(w, alpha, beta)` point; ranges are rejected.
    pub fn point(&self) -> Result<(f64, f64, f64), CliError> {
        let (w, a, b) = self.axes()?;
        match (w.fixed(), a.fixed(), b.fixed()) {
            (Some(w), Some(a), Some(b)) => Ok((w, a, b)),
            _ => Err(CliError::Invalid(
                "parameter ranges are only accepted by the scan command".into(),
            )),
        }
    }

    pub fn out(&self) -> Option<PathBuf> {
        self.cli.out.clone().or_else(|| self.file.out.clone())
    }

    pub fn format(&self) -> Result<Format, CliError> {
        match (self.cli.format, &self.file.format) {
            (Some(f), _) => Ok(f),
            (None, Some(s)) => parse_enum("format", s),
            (None, None) => Ok(Format::Csv),
        }
    }

    pub fn tol(&self, default: f64) -> Result<f64, CliError> {
        let tol = self.cli.tol.or(self.file.tol).unwrap_or(default);
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(CliError::Invalid(format!(
                "--tol must be a finite non-negative number, got {tol}"
            )));
        }
        Ok(tol)
    }

    pub fn trunc(&self, default: usize) -> usize {
        self.cli.trunc.or(self.file.trunc).unwrap_or(default)
    }

    pub fn jobs(&self) -> Option<usize> {
        self.cli.jobs.or(self.file.jobs)
    }

    /// Resolves a command-specific value.
    pub fn pick<T>(&self, cli: Option<T>, file: Option<T>, default: T) -> T {
        cli.or(file).unwrap_or(default)
    }

    /// Resolves a command-specific enum whose file value is a string.
    pub fn pick_enum<T: ValueEnum>(
        &self,
        key: &str,
        cli: Option<T>,
        file: &Option<String>,
        default: T,
    ) -> Result<T, CliError> {
        match (cli, file) {
            (Some(v), _) => Ok(v),
            (None, Some(s)) => parse_enum(key, s),
            (None, None) => Ok(default),
        }
    }

    pub fn dims(&self, cli: &Option<String>, default: &[usize]) -> Result<Vec<usize>, CliError> {
        let parse = |s: &str| -> Result<Vec<usize>, CliError> {
            s.split(',')
                .map(|d| {
                    d.trim()
                        .parse()
                        .map_err(|_| CliError::Invalid(format!("--dims: '{d}' is not a dimension")))
                })
                .collect()
        };
        match (cli, &self.file.dims) {
            (Some(s), _) => parse(s),
            (None, Some(DimsValue::Spec(s))) => parse(s),
            (None, Some(DimsValue::List(v))) => Ok(v.clone()),
            (None, None) => Ok(default.to_vec()),
        }
    }
}
