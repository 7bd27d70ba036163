//! Command-line front end for the `swanson-core` spectral toolkit.
//!
//! Every subcommand renders a [`document::Document`] as CSV or JSON. With
//! `--out` the document is written atomically and accompanied by a
//! [`manifest::RunManifest`] sidecar.

pub mod args;
pub mod commands;
pub mod config;
pub mod document;
pub mod error;
pub mod fmt;
pub mod grid;
pub mod manifest;

use std::io::Write;

pub use args::Cli;
pub use error::{exit_code, CliError};

use config::{FileConfig, Settings};
use manifest::{manifest_path, write_atomic, RunManifest};

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let file = match &cli.common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let settings = Settings::new(cli.common.clone(), file);
    if let Some(jobs) = settings.jobs() {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }

    let outcome = commands::execute(&cli.command, &settings)?;
    let text = outcome.doc.render(settings.format()?);
    match settings.out() {
        Some(path) => {
            write_atomic(&path, text.as_bytes())?;
            let manifest = RunManifest::new(cli.command.name(), outcome.config, text.as_bytes());
            write_atomic(&manifest_path(&path), manifest.to_json().as_bytes())?;
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
