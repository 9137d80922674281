//! Versioned JSON model files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use stancecraft_core::classify::TextClassifier;
use stancecraft_core::textprep::{Normalizer, PreprocessConfig};

use crate::error::{Error, Result};

pub const MODEL_FORMAT: &str = "stancecraft-model";
pub const MODEL_VERSION: u32 = 1;

/// Everything needed to turn raw tweets into predictions again: the
/// preprocessing resources and config, the vocabulary, the fitted
/// vectorizer and the trained parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub seed: u64,
    pub trained_on: String,
    pub train_size: usize,
    pub preprocess: PreprocessConfig,
    pub normalizer: Normalizer,
    pub classifier: TextClassifier,
}

impl ModelFile {
    pub fn new(
        seed: u64,
        trained_on: String,
        train_size: usize,
        preprocess: PreprocessConfig,
        normalizer: Normalizer,
        classifier: TextClassifier,
    ) -> Self {
        ModelFile {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            seed,
            trained_on,
            train_size,
            preprocess,
            normalizer,
            classifier,
        }
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec(self)?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn from_bytes(bytes: &[u8], path: &Path) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_slice(bytes).map_err(|e| Error::schema(path, format!("not a model file: {e}")))?;
        if v.get("format").and_then(|f| f.as_str()) != Some(MODEL_FORMAT) {
            return Err(Error::schema(path, "not a model file"));
        }
        let version = v.get("version").and_then(|x| x.as_u64());
        if version != Some(MODEL_VERSION as u64) {
            return Err(Error::schema(
                path,
                format!("model version {version:?} (expected {MODEL_VERSION})"),
            ));
        }
        serde_json::from_slice(bytes).map_err(|e| Error::schema(path, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes, path)
    }
}
