//! Run metadata: resolved parameters, artifact checksums, timing.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::experiments::Artifact;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Serialize, Deserialize)]
pub struct ArtifactRecord {
    pub file: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Written once per run. Identical configurations produce identical
/// artifact checksums; the duration field is the only varying entry, which
/// is why determinism comparisons skip the manifest itself.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub experiment: String,
    pub version: String,
    pub params: BTreeMap<String, String>,
    pub artifacts: Vec<ArtifactRecord>,
    pub divergence_observed: bool,
    pub duration_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

impl RunManifest {
    pub fn new(
        experiment: &str,
        params: &BTreeMap<String, String>,
        artifacts: &[Artifact],
        divergence_observed: bool,
        duration_ms: u64,
    ) -> Self {
        RunManifest {
            experiment: experiment.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            params: params.clone(),
            artifacts: artifacts
                .iter()
                .map(|a| ArtifactRecord {
                    file: a.name.clone(),
                    sha256: sha256_hex(a.text.as_bytes()),
                    bytes: a.text.len(),
                })
                .collect(),
            divergence_observed,
            duration_ms,
        }
    }

    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(dir.join(MANIFEST_FILE), text + "\n")
    }
}
