use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

const ENGLISH: &str = include_str!("../../data/stopwords_en.txt");

pub const DEFAULT_CUSTOM_ADDITIONS: [&str; 4] = ["amp", "rt", "u", "w"];
pub const DEFAULT_NEGATIONS: [&str; 3] = ["not", "no", "n't"];

/// Which tokens are dropped before modelling.
///
/// Tokens in `base_list ∪ custom_additions` are removed unless they are
/// negation exceptions, which always survive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopwordPolicy {
    pub base_list: BTreeSet<String>,
    pub custom_additions: BTreeSet<String>,
    pub negation_exceptions: BTreeSet<String>,
}

impl Default for StopwordPolicy {
    fn default() -> Self {
        StopwordPolicy::new(parse_word_list(ENGLISH))
    }
}

impl StopwordPolicy {
    /// Policy over `base_list` with the default custom additions and negations.
    pub fn new(base_list: BTreeSet<String>) -> Self {
        StopwordPolicy {
            base_list,
            custom_additions: DEFAULT_CUSTOM_ADDITIONS.iter().map(|s| String::from(*s)).collect(),
            negation_exceptions: DEFAULT_NEGATIONS.iter().map(|s| String::from(*s)).collect(),
        }
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        (self.base_list.contains(token) || self.custom_additions.contains(token))
            && !self.negation_exceptions.contains(token)
    }
}

/// One lowercase word per line; blank lines and `#` comments ignored.
pub fn parse_word_list(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

/// A token made only of punctuation or symbols (no letter or digit).
pub fn is_punctuation(token: &str) -> bool {
    !token.chars().any(char::is_alphanumeric)
}

pub fn remove_stopwords(tokens: &[String], policy: &StopwordPolicy) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| !is_punctuation(t) && !policy.is_stopword(t))
        .cloned()
        .collect()
}
