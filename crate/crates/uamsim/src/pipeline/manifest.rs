//! The run manifest: what went in, what came out, and their digests.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io;
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    /// Hash of the effective configuration; also names the output
    /// directory.
    pub config_hash: String,
    pub tool_version: String,
    pub created_unix_s: u64,
    pub threads: usize,
    pub converged: bool,
    /// Input files (or synthetic parameters) and their digests.
    pub inputs: BTreeMap<String, String>,
    /// Every emitted file and its digest.
    pub outputs: BTreeMap<String, String>,
    pub stage_wall_s: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

impl RunManifest {
    pub fn new(config_hash: String, threads: usize) -> Self {
        RunManifest {
            config_hash,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            created_unix_s: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            threads,
            converged: true,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            stage_wall_s: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn record_output(&mut self, path: &Path) -> io::Result<()> {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        self.outputs.insert(name, file_digest(path)?);
        Ok(())
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, json)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn file_digest(path: &Path) -> io::Result<String> {
    Ok(sha256_hex(&std::fs::read(path)?))
}
