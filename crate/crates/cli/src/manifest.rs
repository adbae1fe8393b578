use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const OUT_DIR_VAR: &str = "SUPERWEIGHTS_OUT_DIR";

#[derive(Serialize)]
pub struct RunManifest {
    pub toolkit_version: &'static str,
    pub argv: Vec<String>,
    pub seed: u64,
    pub input_digests: BTreeMap<String, String>,
    pub wall_clock_ms: u128,
    pub result_digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_file(path: &str) -> std::io::Result<String> {
    Ok(sha256_hex(&std::fs::read(path)?))
}

/// Writes `result.json` and `manifest.json` into the output directory.
pub fn write(dir: &Path, result: &str, manifest: &RunManifest) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("result.json"), result)?;
    let m = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    std::fs::write(dir.join("manifest.json"), m + "\n")
}
