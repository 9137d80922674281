//! Pipeline settings: defaults, overlaid by a TOML file, overlaid by flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use stancecraft_core::classify::{ClassifierKind, NgramRange, VectorizerKind};
use stancecraft_core::corpus::DEFAULT_COVID_TERMS;
use stancecraft_core::textprep::CleaningMode;
use stancecraft_core::windowed::WindowMode;

use crate::error::{Error, Result};
use crate::ingest::InputFormat;

pub const SEED_ENV: &str = "STANCECRAFT_SEED";

/// `N` tweets per window, or `all` for the whole opposing corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowArg(pub WindowMode);

impl FromStr for WindowArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(WindowArg(WindowMode::All));
        }
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(WindowArg(WindowMode::Sized(n))),
            _ => Err(format!("window must be a positive integer or `all`, got {s:?}")),
        }
    }
}

impl fmt::Display for WindowArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            WindowMode::All => f.write_str("all"),
            WindowMode::Sized(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for WindowArg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            WindowMode::All => s.serialize_str("all"),
            WindowMode::Sized(n) => s.serialize_u64(n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for WindowArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::N(n) => n.to_string(),
            Raw::S(s) => s,
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn parse_ngram(s: &str) -> std::result::Result<NgramRange, String> {
    match s {
        "1-1" | "unigram" | "bow" => Ok(NgramRange::Unigram),
        "1-2" | "bigram" => Ok(NgramRange::UniBigram),
        "2-2" | "bigram-only" => Ok(NgramRange::Bigram),
        _ => Err(format!("n-gram range must be 1-1, 1-2 or 2-2, got {s:?}")),
    }
}

/// `1-1`, `1-2` or `2-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NgramArg(pub NgramRange);

impl FromStr for NgramArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_ngram(s).map(NgramArg)
    }
}

impl Serialize for NgramArg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.0.as_str())
    }
}

impl<'de> Deserialize<'de> for NgramArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputSettings {
    pub format: Option<InputFormat>,
    /// Inclusive bounds, ISO-8601.
    pub from: Option<String>,
    pub to: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessSettings {
    pub mode: CleaningMode,
    pub keep_hashtags: bool,
    /// Replaces the bundled English stopword list.
    pub stoplist: Option<PathBuf>,
    /// Replaces the bundled lemma dictionary.
    pub lemma_dict: Option<PathBuf>,
    /// Replaces the default extra stopwords (amp, rt, u, w).
    pub custom_stopwords: Option<Vec<String>>,
}

impl Default for PreprocessSettings {
    fn default() -> Self {
        PreprocessSettings {
            mode: CleaningMode::Lemma,
            keep_hashtags: true,
            stoplist: None,
            lemma_dict: None,
            custom_stopwords: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitSettings {
    pub dev: f64,
    pub train: f64,
    pub test: f64,
}

impl Default for SplitSettings {
    fn default() -> Self {
        SplitSettings {
            dev: 0.1,
            train: 0.8,
            test: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileSettings {
    pub bow_top: usize,
    pub bigram_top: usize,
    pub tfidf_top: usize,
    pub window: WindowArg,
    /// Directory holding states.txt, names.txt, nonenglish.txt, acronyms.txt.
    pub filters: Option<PathBuf>,
    pub categories: Option<PathBuf>,
    pub keep_names: bool,
    pub bow_ratio: f64,
    pub bigram_ratio: f64,
    /// Repetition-count margin for distinct max-TF-IDF words.
    pub tfidf_margin: u64,
    /// When set, distinct max-TF-IDF words use a summed-score margin instead.
    pub tfidf_score_margin: Option<f64>,
    pub min_difference: i64,
}

impl Default for ProfileSettings {
    fn default() -> Self {
        ProfileSettings {
            bow_top: 60,
            bigram_top: 50,
            tfidf_top: 20,
            window: WindowArg(WindowMode::Sized(10)),
            filters: None,
            categories: None,
            keep_names: true,
            bow_ratio: 5.0,
            bigram_ratio: 2.0,
            tfidf_margin: 5,
            tfidf_score_margin: None,
            min_difference: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifySettings {
    pub ngram: NgramArg,
    pub vectorizer: VectorizerKind,
    pub classifier: ClassifierKind,
    pub lambda: f64,
    pub epochs: usize,
    pub alpha: f64,
}

impl Default for ClassifySettings {
    fn default() -> Self {
        ClassifySettings {
            ngram: NgramArg(NgramRange::UniBigram),
            vectorizer: VectorizerKind::Count,
            classifier: ClassifierKind::Svm,
            lambda: 1e-4,
            epochs: 20,
            alpha: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSettings {
    pub ranges: Vec<NgramArg>,
    pub vectorizers: Vec<VectorizerKind>,
    pub classifiers: Vec<ClassifierKind>,
    pub modes: Vec<CleaningMode>,
}

impl Default for GridSettings {
    fn default() -> Self {
        GridSettings {
            ranges: vec![NgramArg(NgramRange::Unigram), NgramArg(NgramRange::UniBigram)],
            vectorizers: vec![VectorizerKind::Count, VectorizerKind::Tfidf],
            classifiers: vec![ClassifierKind::Svm, ClassifierKind::Nb],
            modes: CleaningMode::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub seed: Option<u64>,
    /// Left out of manifests so reruns into another directory hash alike.
    #[serde(skip_serializing)]
    pub out: PathBuf,
    pub filter_terms: Vec<String>,
    pub input: InputSettings,
    pub preprocess: PreprocessSettings,
    pub split: SplitSettings,
    pub profile: ProfileSettings,
    pub classify: ClassifySettings,
    pub grid: GridSettings,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: None,
            out: PathBuf::from("out"),
            filter_terms: DEFAULT_COVID_TERMS.iter().map(|s| s.to_string()).collect(),
            input: InputSettings::default(),
            preprocess: PreprocessSettings::default(),
            split: SplitSettings::default(),
            profile: ProfileSettings::default(),
            classify: ClassifySettings::default(),
            grid: GridSettings::default(),
        }
    }
}

fn rebase(base: &Path, p: &mut Option<PathBuf>) {
    if let Some(path) = p {
        if path.is_relative() {
            *path = base.join(&*path);
        }
    }
}

impl Settings {
    pub fn parse_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))
    }

    /// Relative paths in the file are taken relative to the file itself.
    pub fn load(path: &Path) -> Result<Self> {
        let text = crate::resources::read_config_file(path)?;
        let mut s = Self::parse_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        rebase(base, &mut s.preprocess.stoplist);
        rebase(base, &mut s.preprocess.lemma_dict);
        rebase(base, &mut s.profile.filters);
        rebase(base, &mut s.profile.categories);
        if s.out.is_relative() {
            s.out = base.join(&s.out);
        }
        Ok(s)
    }

    /// The --seed flag, then the config file, then `STANCECRAFT_SEED`,
    /// then 0.
    pub fn resolve_seed(&mut self, flag: Option<u64>, env: Option<&str>) -> Result<u64> {
        let from_env = match env {
            Some(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Config(format!("{SEED_ENV} must be an unsigned integer, got {v:?}")))?,
            ),
            None => None,
        };
        let seed = flag.or(self.seed).or(from_env).unwrap_or(0);
        self.seed = Some(seed);
        Ok(seed)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}
