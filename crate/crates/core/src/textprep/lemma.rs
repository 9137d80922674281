//! Dictionary lemmatizer: an exceptions table plus ordered suffix rules.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const DEFAULT_DICTIONARY: &str = include_str!("../../data/lemma_en.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffixRule {
    pub suffix: String,
    pub replacement: String,
    /// Minimum length (in chars) of what remains once `suffix` is cut.
    pub min_stem_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LemmaDictionary {
    pub exceptions: BTreeMap<String, String>,
    pub suffix_rules: Vec<SuffixRule>,
}

impl LemmaDictionary {
    /// The bundled English noun-first dictionary.
    pub fn english() -> Self {
        Self::parse(DEFAULT_DICTIONARY).expect("bundled lemma dictionary is well-formed")
    }

    /// Parses `word<TAB>lemma` exception lines, a `RULES` sentinel line, then
    /// `suffix<TAB>replacement<TAB>min_stem_len` lines. `#` starts a comment
    /// line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dict = LemmaDictionary::default();
        let mut in_rules = false;
        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            if line.trim() == "RULES" {
                in_rules = true;
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if in_rules {
                let [suffix, replacement, min] = fields[..] else {
                    return Err(Error::Config(format!(
                        "lemma rule line {lineno}: expected 3 tab-separated fields"
                    )));
                };
                let min_stem_len: usize = min
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("lemma rule line {lineno}: bad min_stem_len `{min}`")))?;
                if suffix.is_empty() {
                    return Err(Error::Config(format!("lemma rule line {lineno}: empty suffix")));
                }
                if min_stem_len == 0 && replacement.is_empty() {
                    return Err(Error::Config(format!(
                        "lemma rule line {lineno}: rule could produce an empty lemma"
                    )));
                }
                dict.suffix_rules.push(SuffixRule {
                    suffix: suffix.into(),
                    replacement: replacement.into(),
                    min_stem_len,
                });
            } else {
                let [word, lemma] = fields[..] else {
                    return Err(Error::Config(format!(
                        "lemma exception line {lineno}: expected 2 tab-separated fields"
                    )));
                };
                if word.is_empty() || lemma.is_empty() {
                    return Err(Error::Config(format!("lemma exception line {lineno}: empty field")));
                }
                dict.exceptions.insert(word.into(), lemma.into());
            }
        }
        Ok(dict)
    }

    /// Exceptions first, then the first applicable suffix rule, else the
    /// token itself. Tokens that are not purely alphabetic are only looked up
    /// in the exceptions.
    pub fn lemmatize(&self, token: &str) -> String {
        if let Some(lemma) = self.exceptions.get(token) {
            return lemma.clone();
        }
        if token.is_empty() || !token.chars().all(char::is_alphabetic) {
            return token.into();
        }
        for rule in &self.suffix_rules {
            if let Some(stem) = token.strip_suffix(rule.suffix.as_str()) {
                if stem.chars().count() >= rule.min_stem_len {
                    let mut out = String::from(stem);
                    out.push_str(&rule.replacement);
                    return out;
                }
            }
        }
        token.into()
    }
}

pub fn lemmatize(token: &str, dict: &LemmaDictionary) -> String {
    dict.lemmatize(token)
}
