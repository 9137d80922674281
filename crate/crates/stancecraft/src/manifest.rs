//! Output directories that record what they wrote, and the manifest that
//! ties outputs to their config, seed and inputs.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MANIFEST_NAME: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

impl FileDigest {
    pub fn of_file(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Ok(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
            bytes: bytes.len() as u64,
        })
    }
}

/// No wall-clock fields: identical runs produce identical manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub config_hash: String,
    pub config: serde_json::Value,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

pub struct OutputDir {
    root: PathBuf,
    outputs: Vec<FileDigest>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
        Ok(OutputDir {
            root: root.to_path_buf(),
            outputs: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.root.join(name);
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        self.outputs.retain(|d| d.path != name);
        self.outputs.push(FileDigest {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len() as u64,
        });
        Ok(path)
    }

    pub fn written(&self) -> impl Iterator<Item = &str> {
        self.outputs.iter().map(|d| d.path.as_str())
    }

    /// Writes `manifest.json` next to the outputs and returns it.
    pub fn finish<C: Serialize>(
        mut self,
        command: &str,
        seed: u64,
        config: &C,
        inputs: &[PathBuf],
    ) -> Result<Manifest> {
        let config = serde_json::to_value(config)?;
        let manifest = Manifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            config_hash: sha256_hex(&serde_json::to_vec(&config)?),
            config,
            inputs: inputs.iter().map(|p| FileDigest::of_file(p)).collect::<Result<_>>()?,
            outputs: std::mem::take(&mut self.outputs),
        };
        let mut bytes = serde_json::to_vec_pretty(&manifest)?;
        bytes.push(b'\n');
        let path = self.root.join(MANIFEST_NAME);
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        Ok(manifest)
    }
}
