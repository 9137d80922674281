//! Tweet text normalization: URL stripping, tokenization, stopword removal
//! and per-token stemming or lemmatization.

mod lemma;
mod porter;
mod stopwords;
mod tokenize;
mod url;

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub use lemma::{lemmatize, LemmaDictionary, SuffixRule};
pub use porter::stem;
pub use stopwords::{
    is_punctuation, parse_word_list, remove_stopwords, StopwordPolicy, DEFAULT_CUSTOM_ADDITIONS, DEFAULT_NEGATIONS,
};
pub use tokenize::tokenize;
pub use url::strip_urls;

use crate::corpus::{StanceLabel, Timestamp, TweetRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CleaningMode {
    Stem,
    Lemma,
}

impl CleaningMode {
    pub const BOTH: [CleaningMode; 2] = [CleaningMode::Stem, CleaningMode::Lemma];

    pub fn as_str(self) -> &'static str {
        match self {
            CleaningMode::Stem => "stem",
            CleaningMode::Lemma => "lemma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    pub mode: CleaningMode,
    pub keep_hashtags: bool,
}

impl PreprocessConfig {
    pub fn new(mode: CleaningMode) -> Self {
        PreprocessConfig {
            mode,
            keep_hashtags: true,
        }
    }
}

/// Cleaned tokens of one tweet, with its label and time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDoc {
    pub source_id: String,
    pub label: StanceLabel,
    pub timestamp: Timestamp,
    pub tokens: Vec<String>,
}

impl TokenizedDoc {
    pub fn new(source_id: impl Into<String>, label: StanceLabel, tokens: Vec<String>) -> Self {
        TokenizedDoc {
            source_id: source_id.into(),
            label,
            timestamp: Timestamp(0),
            tokens,
        }
    }
}

/// Bundles the resources `preprocess` needs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Normalizer {
    pub policy: StopwordPolicy,
    pub dictionary: LemmaDictionary,
}

impl Normalizer {
    pub fn english() -> Self {
        Normalizer {
            policy: StopwordPolicy::default(),
            dictionary: LemmaDictionary::english(),
        }
    }

    pub fn clean_text(&self, text: &str, cfg: &PreprocessConfig) -> Vec<String> {
        clean_text(text, cfg, &self.policy, &self.dictionary)
    }

    pub fn preprocess(&self, record: &TweetRecord, cfg: &PreprocessConfig) -> TokenizedDoc {
        preprocess(record, cfg, &self.policy, &self.dictionary)
    }
}

/// strip URLs -> tokenize -> drop stopwords -> stem or lemmatize.
///
/// Stopwords are checked once more after normalization so that a stem or
/// lemma that happens to be a stopword never reaches the output.
pub fn clean_text(text: &str, cfg: &PreprocessConfig, policy: &StopwordPolicy, dict: &LemmaDictionary) -> Vec<String> {
    let tokens = tokenize(&strip_urls(text));
    remove_stopwords(&tokens, policy)
        .into_iter()
        .filter(|t| cfg.keep_hashtags || !t.starts_with('#'))
        .map(|t| match cfg.mode {
            CleaningMode::Stem => stem(&t),
            CleaningMode::Lemma => dict.lemmatize(&t),
        })
        .filter(|t| !t.is_empty() && !policy.is_stopword(t))
        .collect()
}

pub fn preprocess(
    record: &TweetRecord,
    cfg: &PreprocessConfig,
    policy: &StopwordPolicy,
    dict: &LemmaDictionary,
) -> TokenizedDoc {
    TokenizedDoc {
        source_id: record.id.clone(),
        label: record.label(),
        timestamp: record.timestamp,
        tokens: clean_text(&record.text, cfg, policy, dict),
    }
}
