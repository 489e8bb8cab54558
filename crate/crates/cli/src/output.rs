//! Atomic result files plus the run manifest that records how they were made.
//!
//! Result files must be byte-identical across reruns with the same seed, so
//! everything time-dependent (timestamps) lives in a separate manifest file.
//! The manifest sits next to the primary output as `<name>.manifest.json`,
//! and result files reference it by that sibling name: JSON reports carry a
//! `manifest` field, CSV tables a `# manifest:` comment line, and plain word
//! lists rely on the fixed sibling name itself.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::{Category, CliError, CliResult};

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
    pub started_at: String,
    pub finished_at: String,
    /// File names (siblings of this manifest) of the results it describes.
    pub outputs: Vec<String>,
}

/// Collects the outputs of one command invocation and writes the manifest
/// describing them at the end.
pub struct RunContext {
    command: String,
    parameters: serde_json::Value,
    seed: Option<u64>,
    started_at: String,
    manifest_path: Option<PathBuf>,
    outputs: Vec<String>,
}

fn now_rfc3339() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Micros, true)
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

impl RunContext {
    /// `primary` anchors the manifest (same directory, `.manifest.json`
    /// appended to the file name); pass the first file the command writes,
    /// or `None` when the command emits nothing.
    pub fn new(
        command: &str,
        parameters: serde_json::Value,
        seed: Option<u64>,
        primary: Option<&Path>,
    ) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            seed,
            started_at: now_rfc3339(),
            manifest_path: primary.map(manifest_sibling),
            outputs: Vec::new(),
        }
    }

    /// The manifest's file name, for embedding in result files.
    pub fn manifest_name(&self) -> Option<String> {
        self.manifest_path.as_deref().map(file_name)
    }

    pub fn write(&mut self, path: &Path, bytes: &[u8]) -> CliResult {
        write_atomic(path, bytes)?;
        self.outputs.push(file_name(path));
        Ok(())
    }

    /// Writes the manifest next to the primary output (a no-op for purely
    /// stdout commands).
    pub fn finish(self) -> CliResult {
        let Some(path) = self.manifest_path else { return Ok(()) };
        let manifest = RunManifest {
            command: self.command,
            parameters: self.parameters,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_at: self.started_at,
            finished_at: now_rfc3339(),
            outputs: self.outputs,
        };
        write_atomic(&path, &to_json_bytes(&manifest)?)
    }
}

pub fn manifest_sibling(primary: &Path) -> PathBuf {
    let mut name = primary.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    primary.with_file_name(name)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Write-to-temp-then-rename in the target directory, so readers never
/// observe a partially written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult {
    let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    let annotate = |err: std::io::Error| CliError {
        category: Category::Io,
        message: format!("{}: {err}", path.display()),
    };
    fs::write(&tmp, bytes).map_err(annotate)?;
    fs::rename(&tmp, path).map_err(annotate)
}
