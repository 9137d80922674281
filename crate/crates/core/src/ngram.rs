//! Per-party unigram and bigram frequency tables, top-k ranking, matched
//! comparison between parties and distinct-keyword extraction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::StanceLabel;
use crate::textprep::TokenizedDoc;
use crate::{Error, Result};

/// An ordered pair of adjacent tokens.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bigram(pub String, pub String);

impl Bigram {
    pub fn new(first: impl Into<String>, second: impl Into<String>) -> Self {
        Bigram(first.into(), second.into())
    }
}

impl fmt::Display for Bigram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0, self.1)
    }
}

/// Keys that can be checked word-by-word against filter lists.
pub trait KeywordKey: Ord + Clone + fmt::Display {
    fn words(&self) -> Vec<&str>;
}

impl KeywordKey for String {
    fn words(&self) -> Vec<&str> {
        self.split_whitespace().collect()
    }
}

impl KeywordKey for Bigram {
    fn words(&self) -> Vec<&str> {
        alloc::vec![self.0.as_str(), self.1.as_str()]
    }
}

/// Key -> occurrence count for one party. Zero counts are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<K: Ord> {
    /// `None` only for a table built from no documents.
    pub party: Option<StanceLabel>,
    counts: BTreeMap<K, u64>,
    total: u64,
}

pub type FrequencyTable = CountTable<String>;

impl<K: Ord> Default for CountTable<K> {
    fn default() -> Self {
        CountTable {
            party: None,
            counts: BTreeMap::new(),
            total: 0,
        }
    }
}

impl<K: Ord + Clone> CountTable<K> {
    pub fn new(party: Option<StanceLabel>) -> Self {
        CountTable {
            party,
            ..Default::default()
        }
    }

    /// Builds a table from explicit counts; zero entries are dropped.
    pub fn from_counts(party: Option<StanceLabel>, counts: impl IntoIterator<Item = (K, u64)>) -> Self {
        let mut t = CountTable::new(party);
        for (k, c) in counts {
            t.add(k, c);
        }
        t
    }

    pub fn add(&mut self, key: K, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(key).or_insert(0) += n;
        self.total += n;
    }

    pub fn get(&self, key: &K) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u64)> {
        self.counts.iter().map(|(k, c)| (k, *c))
    }

    /// Adds every count of `other` into `self`.
    pub fn merge(&mut self, other: &CountTable<K>) -> Result<()> {
        match (self.party, other.party) {
            (Some(a), Some(b)) if a != b => return Err(Error::MixedParty),
            (None, p) => self.party = p,
            _ => {}
        }
        for (k, c) in other.iter() {
            self.add(k.clone(), c);
        }
        Ok(())
    }

    /// Entries ranked by count descending, then key ascending.
    pub fn ranked(&self) -> Vec<(K, u64)> {
        let mut v: Vec<(K, u64)> = self.counts.iter().map(|(k, c)| (k.clone(), *c)).collect();
        // BTreeMap iteration is key-ascending and the sort is stable.
        v.sort_by_key(|(_, c)| Reverse(*c));
        v
    }
}

fn common_party(docs: &[TokenizedDoc]) -> Result<Option<StanceLabel>> {
    let mut party = None;
    for d in docs {
        match party {
            None => party = Some(d.label),
            Some(p) if p != d.label => return Err(Error::MixedParty),
            _ => {}
        }
    }
    Ok(party)
}

/// Bag-of-words counts over documents of a single party.
pub fn bow_counts(docs: &[TokenizedDoc]) -> Result<FrequencyTable> {
    let mut t = FrequencyTable::new(common_party(docs)?);
    for d in docs {
        for tok in &d.tokens {
            t.add(tok.clone(), 1);
        }
    }
    Ok(t)
}

/// Adjacent-pair counts within each document, plus how often each token
/// opens a pair (its count as a conditioning context).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigramTable {
    pub pairs: CountTable<Bigram>,
    pub unigram_counts: BTreeMap<String, u64>,
}

impl BigramTable {
    pub fn party(&self) -> Option<StanceLabel> {
        self.pairs.party
    }

    pub fn add_doc(&mut self, tokens: &[String]) {
        for w in tokens.windows(2) {
            self.pairs.add(Bigram::new(w[0].clone(), w[1].clone()), 1);
            *self.unigram_counts.entry(w[0].clone()).or_insert(0) += 1;
        }
    }

    /// Builds a table directly from pair counts.
    pub fn from_pairs(party: Option<StanceLabel>, pairs: impl IntoIterator<Item = (Bigram, u64)>) -> Self {
        let pairs = CountTable::from_counts(party, pairs);
        let mut unigram_counts = BTreeMap::new();
        for (b, c) in pairs.iter() {
            *unigram_counts.entry(b.0.clone()).or_insert(0) += c;
        }
        BigramTable { pairs, unigram_counts }
    }
}

/// Bigrams never cross document boundaries: a doc of `k` tokens
/// contributes `k - 1` pairs.
pub fn bigram_counts(docs: &[TokenizedDoc]) -> Result<BigramTable> {
    let mut t = BigramTable {
        pairs: CountTable::new(common_party(docs)?),
        unigram_counts: BTreeMap::new(),
    };
    for d in docs {
        t.add_doc(&d.tokens);
    }
    Ok(t)
}

/// Unsmoothed `P(next | prev)`.
pub fn bigram_prob(table: &BigramTable, prev: &str, next: &str) -> Result<f64> {
    let ctx = table.unigram_counts.get(prev).copied().unwrap_or(0);
    if ctx == 0 {
        return Err(Error::UnseenContext(prev.into()));
    }
    let pair = table.pairs.get(&Bigram::new(prev, next));
    Ok(pair as f64 / ctx as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinctKeyword<K> {
    pub key: K,
    pub own_count: u64,
    pub other_count: u64,
    pub difference: i64,
    /// `own / other`, or `+inf` when the other party never uses the key.
    pub ratio: f64,
}

/// Keys at least `ratio_threshold` times more frequent in `own` than in
/// `other` (or absent from `other`) whose difference is at least
/// `min_difference`. Sorted by difference descending, then key.
pub fn distinct_keywords<K: Ord + Clone>(
    own: &CountTable<K>,
    other: &CountTable<K>,
    ratio_threshold: f64,
    min_difference: i64,
) -> Result<Vec<DistinctKeyword<K>>> {
    if ratio_threshold.is_nan() || ratio_threshold <= 1.0 {
        return Err(Error::Config(alloc::format!(
            "ratio threshold must exceed 1, got {ratio_threshold}"
        )));
    }
    let mut out: Vec<DistinctKeyword<K>> = own
        .iter()
        .filter_map(|(k, own_count)| {
            let other_count = other.get(k);
            let ratio = if other_count == 0 {
                f64::INFINITY
            } else {
                own_count as f64 / other_count as f64
            };
            let difference = own_count as i64 - other_count as i64;
            (ratio >= ratio_threshold && difference >= min_difference).then(|| DistinctKeyword {
                key: k.clone(),
                own_count,
                other_count,
                difference,
                ratio,
            })
        })
        .collect();
    out.sort_by(|a, b| b.difference.cmp(&a.difference).then_with(|| a.key.cmp(&b.key)));
    Ok(out)
}

/// The `k` most frequent keys (count descending, key ascending).
pub fn top_k<K: Ord + Clone>(table: &CountTable<K>, k: usize) -> Vec<(K, u64)> {
    let mut ranked = table.ranked();
    ranked.truncate(k);
    ranked
}

/// Keys present in both top-`k` lists, in `a`'s rank order.
pub fn matched_comparison<K: Ord + Clone>(a: &CountTable<K>, b: &CountTable<K>, k: usize) -> Vec<(K, u64, u64)> {
    let top_b: BTreeSet<K> = top_k(b, k).into_iter().map(|(key, _)| key).collect();
    top_k(a, k)
        .into_iter()
        .filter(|(key, _)| top_b.contains(key))
        .map(|(key, ca)| {
            let cb = b.get(&key);
            (key, ca, cb)
        })
        .collect()
}

/// Keys in `a`'s top-`k` that are absent from `b`'s top-`k`.
pub fn unique_top<K: Ord + Clone>(a: &CountTable<K>, b: &CountTable<K>, k: usize) -> Vec<(K, u64)> {
    let top_b: BTreeSet<K> = top_k(b, k).into_iter().map(|(key, _)| key).collect();
    top_k(a, k)
        .into_iter()
        .filter(|(key, _)| !top_b.contains(key))
        .collect()
}

pub const NAMES_LIST: &str = "names";

/// Named word lists whose members are filtered out of keyword reports.
///
/// The list called `names` (person names) is only applied when
/// `keep_names` is false.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KeywordFilterRules {
    pub drop_lists: BTreeMap<String, BTreeSet<String>>,
    pub keep_names: bool,
}

impl KeywordFilterRules {
    pub fn with_list(mut self, name: impl Into<String>, words: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.drop_lists
            .entry(name.into())
            .or_default()
            .extend(words.into_iter().map(Into::into));
        self
    }

    /// Adds `normalize(entry)` next to every entry, so lists written in
    /// plain words also catch stemmed or lemmatized keys.
    pub fn with_normalized_forms(mut self, normalize: impl Fn(&str) -> String) -> Self {
        for list in self.drop_lists.values_mut() {
            let extra: Vec<String> = list
                .iter()
                .map(|w| w.split_whitespace().map(&normalize).collect::<Vec<_>>().join(" "))
                .collect();
            list.extend(extra);
        }
        self
    }

    fn active_lists(&self) -> impl Iterator<Item = &BTreeSet<String>> {
        self.drop_lists
            .iter()
            .filter(|(name, _)| !(self.keep_names && name.as_str() == NAMES_LIST))
            .map(|(_, l)| l)
    }

    /// True when the whole key or any of its words is on an active list.
    pub fn drops<K: KeywordKey>(&self, key: &K) -> bool {
        let words = key.words();
        let joined = words.join(" ");
        self.active_lists()
            .any(|list| list.contains(&joined) || words.iter().any(|w| list.contains(*w)))
    }
}

pub fn apply_keyword_filters<K: KeywordKey>(keys: Vec<K>, rules: &KeywordFilterRules) -> Vec<K> {
    keys.into_iter().filter(|k| !rules.drops(k)).collect()
}
