//! Run provenance: every command that writes an output also writes a small
//! JSON manifest recording what produced it — the command name, the fully
//! resolved parameters, SHA-256 digests of all input files, the tool
//! version, and a UTC timestamp.

use std::collections::BTreeMap;
use std::io::Read as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// What produced an output file, with enough detail to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Subcommand or example name.
    pub command: String,
    /// All parameters after defaults and presets were applied.
    pub parameters: serde_json::Value,
    /// Input path -> SHA-256 hex digest, sorted by path.
    pub input_digests: BTreeMap<String, String>,
    /// Crate version that ran.
    pub tool_version: String,
    /// RFC 3339 UTC timestamp of the run.
    pub timestamp: String,
}

impl RunManifest {
    /// A manifest for the current run, stamped with the crate version and
    /// the current UTC time.
    pub fn new(command: impl Into<String>, parameters: serde_json::Value) -> Self {
        RunManifest {
            command: command.into(),
            parameters,
            input_digests: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    /// Record an input file by digesting its current content.
    pub fn add_input(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        self.input_digests
            .insert(path.display().to_string(), sha256_hex(path)?);
        Ok(())
    }

    /// Write the manifest as pretty JSON.
    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        crate::io::write_json(path, self)
    }
}

/// SHA-256 of a file's content as lowercase hex.
pub fn sha256_hex(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let mut file = std::fs::File::open(path)
        .map_err(|e| Error::io(format!("opening {}", path.display()), e))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file
            .read(&mut buf)
            .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_matches_the_known_sha256_of_a_fixed_payload() {
        let dir = tempfile::tempdir().expect("temp dir");
        let path = dir.path().join("payload.txt");
        std::fs::write(&path, "abc").expect("fixture written");
        let digest = sha256_hex(&path).expect("digest computed");
        assert_eq!(
            digest, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
            "sha256 of the string 'abc' is a published test vector"
        );
    }

    #[test]
    fn manifest_records_inputs_and_round_trips_through_json() {
        let dir = tempfile::tempdir().expect("temp dir");
        let input = dir.path().join("input.csv");
        std::fs::write(&input, "frequency_hz,psd_value,unit_kind\n").expect("fixture written");

        let mut manifest = RunManifest::new(
            "bound",
            serde_json::json!({"band": [1e-3, 1e-2], "channel": "rotational"}),
        );
        manifest.add_input(&input).expect("input digested");
        assert_eq!(manifest.input_digests.len(), 1);
        assert_eq!(manifest.tool_version, env!("CARGO_PKG_VERSION"));
        assert!(
            manifest.timestamp.starts_with("20"),
            "timestamp should be RFC 3339, got {}",
            manifest.timestamp
        );

        let path = dir.path().join("run.json");
        manifest.write(&path).expect("manifest written");
        let back: RunManifest = crate::io::read_json(&path).expect("manifest read");
        assert_eq!(back, manifest, "manifest must survive a JSON round trip");
    }

    #[test]
    fn digesting_a_missing_input_is_an_io_error() {
        let mut manifest = RunManifest::new("eta", serde_json::Value::Null);
        let err = manifest.add_input("/nonexistent/input.csv").unwrap_err();
        assert!(matches!(err, Error::Io { .. }), "expected an io error, got {err:?}");
    }
}
