//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::document::Format;

#[derive(Debug, Parser)]
#[command(
    name = "swanson",
    version,
    about = "Spectral toolkit for the Swanson oscillator H = w(a^dag a + 1/2) + alpha a^2 + beta (a^dag)^2"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Oscillator frequency: a number, or min:max:step for scan
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Coefficient of a^2: a number, or min:max:step for scan
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Coefficient of (a^dag)^2: a number, or min:max:step for scan
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Write the result here (plus a <out>.manifest.json sidecar) instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Classification tolerance, or drift tolerance for truncation studies
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Truncation dimension of the Fock basis
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// TOML file with default values for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Energy levels by closed form, raw truncation or the hermitized operator
    Spectrum {
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<SpectrumMethod>,
    },
    /// Region classification of one parameter point
    Classify,
    /// Rayleigh-Schroedinger series for one level
    Perturb {
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Similarity-transform chain to a Hermitian operator
    Transform {
        #[arg(long, value_enum)]
        chain: Option<ChainKind>,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Classify every point of a parameter grid into a CSV file
    Scan {
        #[arg(long)]
        max_points: Option<usize>,
    },
    /// Drift of the lowest levels across increasing truncations
    Convergence {
        /// Comma-separated, strictly increasing dimensions
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<ConvergenceMethod>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Classify => "classify",
            Command::Perturb { .. } => "perturb",
            Command::Transform { .. } => "transform",
            Command::Scan { .. } => "scan",
            Command::Convergence { .. } => "convergence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMethod {
    Analytic,
    RawFock,
    Hermitized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainKind {
    Case1,
    Case2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvergenceMethod {
    Raw,
    Hermitized,
}

/// Canonical name of a value-enum variant.
pub fn variant_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned()
}
