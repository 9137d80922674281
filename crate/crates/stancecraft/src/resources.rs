//! Word lists, dictionaries and maps loaded from files or the bundled copies.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use stancecraft_core::ngram::KeywordFilterRules;
use stancecraft_core::textprep::{parse_word_list, stem, CleaningMode, LemmaDictionary, Normalizer};
use stancecraft_core::windowed::CategoryMap;

use crate::error::{Error, Result};

/// File stems of the keyword drop lists, in the order they are applied.
pub const FILTER_LISTS: [&str; 4] = ["states", "names", "nonenglish", "acronyms"];

const BUNDLED_LISTS: [&str; 4] = [
    include_str!("../data/states.txt"),
    include_str!("../data/names.txt"),
    include_str!("../data/nonenglish.txt"),
    include_str!("../data/acronyms.txt"),
];

/// Reads a configuration file; any failure is a configuration error.
pub fn read_config_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

pub fn load_stoplist(path: &Path) -> Result<BTreeSet<String>> {
    Ok(parse_word_list(&read_config_file(path)?))
}

pub fn load_lemma_dictionary(path: &Path) -> Result<LemmaDictionary> {
    Ok(LemmaDictionary::parse(&read_config_file(path)?)?)
}

pub fn load_category_map(path: &Path) -> Result<CategoryMap> {
    Ok(CategoryMap::parse(&read_config_file(path)?)?)
}

pub fn bundled_filter_rules() -> KeywordFilterRules {
    FILTER_LISTS
        .iter()
        .zip(BUNDLED_LISTS)
        .fold(KeywordFilterRules::default(), |rules, (name, text)| {
            rules.with_list(*name, parse_word_list(text))
        })
}

/// Loads `states.txt`, `names.txt`, `nonenglish.txt` and `acronyms.txt`
/// from `dir`; every file must exist.
pub fn load_filter_rules(dir: &Path) -> Result<KeywordFilterRules> {
    let mut rules = KeywordFilterRules::default();
    for name in FILTER_LISTS {
        let text = read_config_file(&dir.join(format!("{name}.txt")))?;
        rules = rules.with_list(name, parse_word_list(&text));
    }
    Ok(rules)
}

/// Normalizes each word of a (possibly multi-word) list entry the way
/// tweet tokens are normalized under `mode`.
pub fn normalize_entry(entry: &str, mode: CleaningMode, normalizer: &Normalizer) -> String {
    entry
        .split_whitespace()
        .map(|w| match mode {
            CleaningMode::Stem => stem(w),
            CleaningMode::Lemma => normalizer.dictionary.lemmatize(w),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
