//! Run manifests and atomic output files.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use swanson_core::CONVENTION;

pub const TOOL: &str = "swanson";

/// Provenance record written next to every output file.
///
/// Two runs with the same resolved configuration produce manifests that
/// differ only in `timestamp`.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Map<String, Value>,
    pub convention: &'static str,
    pub timestamp: String,
    /// SHA-256 of the canonical JSON encoding of `config`.
    pub input_hash: String,
    /// SHA-256 of the data file contents.
    pub output_hash: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, config: Map<String, Value>, output: &[u8]) -> Self {
        let canonical = serde_json::to_vec(&config).expect("config serializes");
        Self {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_owned(),
            input_hash: sha256_hex(&canonical),
            output_hash: sha256_hex(output),
            config,
            convention: CONVENTION,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }
}

/// `<out>.manifest.json`
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
