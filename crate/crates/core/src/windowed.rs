//! Chronological cross-party TF-IDF.
//!
//! Each tweet of one party is scored against a window of the other party's
//! tweets from the same stretch of time: tweets are consumed in blocks of
//! `window_size`, and block `i` of party A is compared with block `i` of
//! party B. For every tweet the token with the highest `tf * idf` wins.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::corpus::Timestamp;
use crate::ngram::DistinctKeyword;
use crate::textprep::TokenizedDoc;
use crate::{Error, Result};

const DEFAULT_CATEGORIES: &str = include_str!("../data/categories.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowMode {
    /// Opposing-party blocks of this many tweets.
    Sized(usize),
    /// The whole opposing-party corpus as a single window.
    All,
}

/// `ln((1 + N) / (1 + df)) + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum IdfSmoothing {
    #[default]
    AddOne,
}

/// Among equal scores the token that occurs first in the tweet wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TieBreak {
    #[default]
    FirstOccurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TfidfConfig {
    pub window: WindowMode,
    pub idf_smoothing: IdfSmoothing,
    pub tie_break: TieBreak,
}

impl Default for TfidfConfig {
    fn default() -> Self {
        TfidfConfig {
            window: WindowMode::Sized(10),
            idf_smoothing: IdfSmoothing::AddOne,
            tie_break: TieBreak::FirstOccurrence,
        }
    }
}

impl TfidfConfig {
    pub fn with_window(window_size: usize) -> Result<Self> {
        let cfg = TfidfConfig {
            window: WindowMode::Sized(window_size),
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        match self.window {
            WindowMode::Sized(0) => Err(Error::Config("window size must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxTfidfRecord {
    pub source_id: String,
    pub timestamp: Timestamp,
    pub word: String,
    pub score: f64,
    /// Index of the opposing-party block the tweet was scored against.
    pub window_index: usize,
}

/// Share of `doc`'s tokens equal to `word`.
pub fn tf(word: &str, doc: &TokenizedDoc) -> Result<f64> {
    if doc.tokens.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let count = doc.tokens.iter().filter(|t| *t == word).count();
    Ok(count as f64 / doc.tokens.len() as f64)
}

pub fn idf_from_df(df: usize, n: usize) -> f64 {
    libm::log((1.0 + n as f64) / (1.0 + df as f64)) + 1.0
}

pub fn idf(word: &str, window: &[TokenizedDoc]) -> Result<f64> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let df = window.iter().filter(|d| d.tokens.iter().any(|t| t == word)).count();
    Ok(idf_from_df(df, window.len()))
}

/// Document frequencies over a window, computed once per window.
struct WindowIndex<'a> {
    docs: Vec<BTreeSet<&'a str>>,
}

impl<'a> WindowIndex<'a> {
    fn new(window: &'a [TokenizedDoc]) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::EmptyWindow);
        }
        Ok(WindowIndex {
            docs: window
                .iter()
                .map(|d| d.tokens.iter().map(String::as_str).collect())
                .collect(),
        })
    }

    fn idf(&self, word: &str) -> f64 {
        let df = self.docs.iter().filter(|d| d.contains(word)).count();
        idf_from_df(df, self.docs.len())
    }
}

fn best_token(doc: &TokenizedDoc, index: &WindowIndex<'_>) -> Result<(String, f64)> {
    if doc.tokens.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let len = doc.tokens.len() as f64;
    let mut seen = BTreeSet::new();
    let mut best: Option<(&str, f64)> = None;
    for tok in &doc.tokens {
        if !seen.insert(tok.as_str()) {
            continue;
        }
        let count = doc.tokens.iter().filter(|t| *t == tok).count();
        let score = count as f64 / len * index.idf(tok);
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((tok, score));
        }
    }
    let (word, score) = best.expect("non-empty doc has a token");
    Ok((word.into(), score))
}

pub fn max_tfidf_word(doc: &TokenizedDoc, window: &[TokenizedDoc], window_index: usize) -> Result<MaxTfidfRecord> {
    let index = WindowIndex::new(window)?;
    let (word, score) = best_token(doc, &index)?;
    Ok(MaxTfidfRecord {
        source_id: doc.source_id.clone(),
        timestamp: doc.timestamp,
        word,
        score,
        window_index,
    })
}

fn check_sorted(docs: &[TokenizedDoc], which: &str) -> Result<()> {
    if docs.windows(2).any(|w| w[0].timestamp > w[1].timestamp) {
        return Err(Error::Input(format!("{which} documents are not sorted by timestamp")));
    }
    Ok(())
}

/// Opposing block used for position `i` of party A: A's block index, capped
/// at B's last block. Returns `(block_index, start, end)` into B.
pub fn window_for(i: usize, window_size: usize, b_len: usize) -> (usize, usize, usize) {
    let b_blocks = b_len.div_ceil(window_size);
    let block = (i / window_size).min(b_blocks - 1);
    let start = block * window_size;
    (block, start, (start + window_size).min(b_len))
}

/// One record per tweet of `party_a`, in input order.
pub fn chronological_pass(
    party_a: &[TokenizedDoc],
    party_b: &[TokenizedDoc],
    cfg: &TfidfConfig,
) -> Result<Vec<MaxTfidfRecord>> {
    cfg.validate()?;
    if party_a.is_empty() || party_b.is_empty() {
        return Err(Error::Input("both parties need at least one document".into()));
    }
    check_sorted(party_a, "first party")?;
    check_sorted(party_b, "second party")?;
    let w = match cfg.window {
        WindowMode::Sized(w) => w,
        WindowMode::All => party_b.len(),
    };
    let mut out = Vec::with_capacity(party_a.len());
    let mut cached: Option<(usize, WindowIndex<'_>)> = None;
    for (i, doc) in party_a.iter().enumerate() {
        let (block, start, end) = window_for(i, w, party_b.len());
        if cached.as_ref().is_none_or(|(b, _)| *b != block) {
            cached = Some((block, WindowIndex::new(&party_b[start..end])?));
        }
        let (_, index) = cached.as_ref().expect("window cached above");
        let (word, score) = best_token(doc, index)?;
        out.push(MaxTfidfRecord {
            source_id: doc.source_id.clone(),
            timestamp: doc.timestamp,
            word,
            score,
            window_index: block,
        });
    }
    Ok(out)
}

/// How many records each word wins: count descending, word ascending.
pub fn top_repeated(records: &[MaxTfidfRecord], k: usize) -> Vec<(String, u64)> {
    let mut ranked: Vec<(String, u64)> = repetition_counts(records).into_iter().collect();
    ranked.sort_by_key(|r| core::cmp::Reverse(r.1));
    ranked.truncate(k);
    ranked
}

pub fn repetition_counts(records: &[MaxTfidfRecord]) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for r in records {
        *counts.entry(r.word.clone()).or_insert(0) += 1;
    }
    counts
}

/// How a max-TF-IDF word is judged distinct for one party.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TfidfDistinctRule {
    /// Won at least this many more tweets than in the other party.
    RepetitionMargin(u64),
    /// Summed winning scores exceed the other party's by at least this much.
    ScoreMargin(f64),
}

impl Default for TfidfDistinctRule {
    fn default() -> Self {
        TfidfDistinctRule::RepetitionMargin(5)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfDistinct {
    pub word: String,
    pub own: f64,
    pub other: f64,
    pub difference: f64,
}

fn score_sums(records: &[MaxTfidfRecord]) -> BTreeMap<String, f64> {
    let mut sums = BTreeMap::new();
    for r in records {
        *sums.entry(r.word.clone()).or_insert(0.0) += r.score;
    }
    sums
}

/// Words whose max-TF-IDF wins set `own` apart from `other`, sorted by
/// difference descending, then word.
pub fn tfidf_distinct(own: &[MaxTfidfRecord], other: &[MaxTfidfRecord], rule: TfidfDistinctRule) -> Vec<TfidfDistinct> {
    let (own_m, other_m, margin) = match rule {
        TfidfDistinctRule::RepetitionMargin(m) => {
            let conv = |c: BTreeMap<String, u64>| c.into_iter().map(|(k, v)| (k, v as f64)).collect::<BTreeMap<_, _>>();
            (conv(repetition_counts(own)), conv(repetition_counts(other)), m as f64)
        }
        TfidfDistinctRule::ScoreMargin(m) => (score_sums(own), score_sums(other), m),
    };
    let mut out: Vec<TfidfDistinct> = own_m
        .into_iter()
        .filter_map(|(word, own)| {
            let other = other_m.get(&word).copied().unwrap_or(0.0);
            let difference = own - other;
            (difference >= margin).then_some(TfidfDistinct {
                word,
                own,
                other,
                difference,
            })
        })
        .collect();
    out.sort_by(|a, b| b.difference.total_cmp(&a.difference).then_with(|| a.word.cmp(&b.word)));
    out
}

impl From<&TfidfDistinct> for DistinctKeyword<String> {
    fn from(d: &TfidfDistinct) -> Self {
        DistinctKeyword {
            key: d.word.clone(),
            own_count: d.own as u64,
            other_count: d.other as u64,
            difference: d.difference as i64,
            ratio: if d.other == 0.0 { f64::INFINITY } else { d.own / d.other },
        }
    }
}

pub const OTHER_CATEGORY: &str = "other";

/// Word -> topical category.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CategoryMap(pub BTreeMap<String, String>);

impl CategoryMap {
    /// The bundled map over the ten topical categories.
    pub fn default_map() -> Self {
        Self::parse(DEFAULT_CATEGORIES).expect("bundled category map is well-formed")
    }

    /// `word<TAB>category` lines; `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((word, cat)) = line.split_once('\t') else {
                return Err(Error::Config(format!(
                    "category map line {}: expected word<TAB>category",
                    n + 1
                )));
            };
            map.insert(word.trim().into(), cat.trim().into());
        }
        Ok(CategoryMap(map))
    }

    /// Also maps `normalize(word)` when that form is not already listed.
    pub fn with_normalized_forms(mut self, normalize: impl Fn(&str) -> String) -> Self {
        let extra: Vec<(String, String)> = self.0.iter().map(|(w, c)| (normalize(w), c.clone())).collect();
        for (w, c) in extra {
            self.0.entry(w).or_insert(c);
        }
        self
    }

    pub fn category(&self, word: &str) -> &str {
        self.0.get(word).map(String::as_str).unwrap_or(OTHER_CATEGORY)
    }
}

pub fn categorize<S: AsRef<str>>(words: &[S], map: &CategoryMap) -> Vec<(String, String)> {
    words
        .iter()
        .map(|w| (String::from(w.as_ref()), String::from(map.category(w.as_ref()))))
        .collect()
}
