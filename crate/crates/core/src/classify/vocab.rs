use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::textprep::TokenizedDoc;
use crate::{Error, Result};

/// Which n-grams become features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NgramRange {
    /// Unigrams only, `(1, 1)`.
    Unigram,
    /// Unigrams and bigrams, `(1, 2)`.
    UniBigram,
    /// Bigrams only, `(2, 2)`.
    Bigram,
}

impl NgramRange {
    pub fn as_str(self) -> &'static str {
        match self {
            NgramRange::Unigram => "1-1",
            NgramRange::UniBigram => "1-2",
            NgramRange::Bigram => "2-2",
        }
    }
}

/// Feature strings of a token sequence, in order of occurrence. A bigram
/// feature is its two tokens joined by a space.
pub fn features(tokens: &[String], range: NgramRange) -> Vec<String> {
    let mut out = Vec::new();
    if range != NgramRange::Bigram {
        out.extend(tokens.iter().cloned());
    }
    if range != NgramRange::Unigram {
        out.extend(tokens.windows(2).map(|w| {
            let mut s = String::with_capacity(w[0].len() + w[1].len() + 1);
            s.push_str(&w[0]);
            s.push(' ');
            s.push_str(&w[1]);
            s
        }));
    }
    out
}

/// Feature string -> dense column id, in first-seen order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "VocabularyRepr", into = "VocabularyRepr")]
pub struct Vocabulary {
    pub ngram_range: NgramRange,
    pub built_from: String,
    features: Vec<String>,
    index: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct VocabularyRepr {
    ngram_range: NgramRange,
    built_from: String,
    features: Vec<String>,
}

impl From<VocabularyRepr> for Vocabulary {
    fn from(r: VocabularyRepr) -> Self {
        Vocabulary::from_features(r.ngram_range, r.built_from, r.features)
    }
}

impl From<Vocabulary> for VocabularyRepr {
    fn from(v: Vocabulary) -> Self {
        VocabularyRepr {
            ngram_range: v.ngram_range,
            built_from: v.built_from,
            features: v.features,
        }
    }
}

impl Vocabulary {
    /// Duplicate feature strings keep their first column.
    pub fn from_features(ngram_range: NgramRange, built_from: impl Into<String>, features: Vec<String>) -> Self {
        let mut v = Vocabulary {
            ngram_range,
            built_from: built_from.into(),
            features: Vec::new(),
            index: BTreeMap::new(),
        };
        for f in features {
            v.insert(f);
        }
        v
    }

    fn insert(&mut self, feature: String) {
        if !self.index.contains_key(&feature) {
            self.index.insert(feature.clone(), self.features.len());
            self.features.push(feature);
        }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn column(&self, feature: &str) -> Option<usize> {
        self.index.get(feature).copied()
    }

    pub fn feature(&self, column: usize) -> Option<&str> {
        self.features.get(column).map(String::as_str)
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    /// Column ids of the in-vocabulary features of `tokens`, with repeats.
    pub fn columns(&self, tokens: &[String]) -> Vec<usize> {
        features(tokens, self.ngram_range)
            .iter()
            .filter_map(|f| self.column(f))
            .collect()
    }
}

pub fn build_vocab(docs: &[TokenizedDoc], ngram_range: NgramRange, built_from: &str) -> Result<Vocabulary> {
    if docs.is_empty() {
        return Err(Error::Input("cannot build a vocabulary from zero documents".into()));
    }
    let mut v = Vocabulary::from_features(ngram_range, built_from, Vec::new());
    for d in docs {
        for f in features(&d.tokens, ngram_range) {
            v.insert(f);
        }
    }
    Ok(v)
}
