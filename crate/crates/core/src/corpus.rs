//! Tweet records, stance labels, COVID-term filtering and seeded splits.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Filter terms used when the caller does not supply any.
pub const DEFAULT_COVID_TERMS: [&str; 12] = [
    "covid",
    "covid-19",
    "corona",
    "coronavirus",
    "pandemic",
    "sars-cov-2",
    "2019-ncov",
    "virus",
    "epidemic",
    "flu",
    "influenza",
    "cold",
];

/// Seconds since the Unix epoch, UTC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Timestamp(pub i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PartyCode {
    #[serde(rename = "D")]
    Democrat,
    #[serde(rename = "R")]
    Republican,
    #[serde(rename = "NPP")]
    NewProgressive,
}

impl PartyCode {
    pub fn as_str(self) -> &'static str {
        match self {
            PartyCode::Democrat => "D",
            PartyCode::Republican => "R",
            PartyCode::NewProgressive => "NPP",
        }
    }

    /// Left/right grouping: Democrats and the New Progressive Party lean
    /// left, Republicans lean right.
    pub fn label(self) -> StanceLabel {
        assign_label(self)
    }
}

impl core::str::FromStr for PartyCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" => Ok(PartyCode::Democrat),
            "R" => Ok(PartyCode::Republican),
            "NPP" => Ok(PartyCode::NewProgressive),
            other => Err(Error::Input(alloc::format!("unknown party code `{other}`"))),
        }
    }
}

impl fmt::Display for PartyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Binary stance: `+1` for left-leaning, `-1` for right-leaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum StanceLabel {
    Left,
    Right,
}

impl StanceLabel {
    pub const BOTH: [StanceLabel; 2] = [StanceLabel::Left, StanceLabel::Right];

    pub fn value(self) -> i8 {
        match self {
            StanceLabel::Left => 1,
            StanceLabel::Right => -1,
        }
    }

    pub fn sign(self) -> f64 {
        f64::from(self.value())
    }

    /// Position in two-element per-class arrays (left first).
    pub fn index(self) -> usize {
        match self {
            StanceLabel::Left => 0,
            StanceLabel::Right => 1,
        }
    }

    pub fn opposite(self) -> StanceLabel {
        match self {
            StanceLabel::Left => StanceLabel::Right,
            StanceLabel::Right => StanceLabel::Left,
        }
    }

    /// Sign of a decision score; zero maps to left.
    pub fn from_score(score: f64) -> StanceLabel {
        if score >= 0.0 {
            StanceLabel::Left
        } else {
            StanceLabel::Right
        }
    }
}

impl From<StanceLabel> for i8 {
    fn from(label: StanceLabel) -> i8 {
        label.value()
    }
}

impl TryFrom<i8> for StanceLabel {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(StanceLabel::Left),
            -1 => Ok(StanceLabel::Right),
            other => Err(Error::Input(alloc::format!(
                "stance label must be +1 or -1, got {other}"
            ))),
        }
    }
}

impl fmt::Display for StanceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StanceLabel::Left => f.write_str("+1"),
            StanceLabel::Right => f.write_str("-1"),
        }
    }
}

pub fn assign_label(party: PartyCode) -> StanceLabel {
    match party {
        PartyCode::Democrat | PartyCode::NewProgressive => StanceLabel::Left,
        PartyCode::Republican => StanceLabel::Right,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub timestamp: Timestamp,
    pub username: String,
    pub party: PartyCode,
    pub state: String,
    pub text: String,
}

impl TweetRecord {
    pub fn label(&self) -> StanceLabel {
        assign_label(self.party)
    }
}

/// An ordered collection of records with unique ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    records: Vec<TweetRecord>,
    pub provenance: String,
    pub filter_terms_applied: Option<Vec<String>>,
}

impl Corpus {
    pub fn new(records: Vec<TweetRecord>, provenance: impl Into<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &records {
            if r.id.is_empty() {
                return Err(Error::Input("record id is empty".into()));
            }
            if !seen.insert(r.id.as_str()) {
                return Err(Error::DuplicateId(r.id.clone()));
            }
        }
        Ok(Corpus {
            records,
            provenance: provenance.into(),
            filter_terms_applied: None,
        })
    }

    // Only for subsets of an already-validated corpus.
    fn from_subset(records: Vec<TweetRecord>, parent: &Corpus) -> Self {
        Corpus {
            records,
            provenance: parent.provenance.clone(),
            filter_terms_applied: parent.filter_terms_applied.clone(),
        }
    }

    pub fn records(&self) -> &[TweetRecord] {
        &self.records
    }

    pub fn into_records(self) -> Vec<TweetRecord> {
        self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.records.iter().map(|r| r.id.as_str())
    }

    /// Concatenates two corpora, e.g. development and training splits.
    pub fn concat(&self, other: &Corpus) -> Result<Corpus> {
        let mut records = self.records.clone();
        records.extend(other.records.iter().cloned());
        let mut merged = Corpus::new(records, self.provenance.clone())?;
        merged.filter_terms_applied = self.filter_terms_applied.clone();
        Ok(merged)
    }
}

/// Keeps records whose lowercased text contains any term as a substring.
pub fn filter_covid<S: AsRef<str>>(corpus: &Corpus, terms: &[S]) -> Result<Corpus> {
    if terms.is_empty() {
        return Err(Error::Config("COVID filter term list is empty".into()));
    }
    let terms: Vec<String> = terms.iter().map(|t| t.as_ref().to_lowercase()).collect();
    if terms.iter().any(|t| t.is_empty()) {
        return Err(Error::Config("COVID filter term list contains an empty term".into()));
    }
    let kept = corpus
        .records
        .iter()
        .filter(|r| {
            let text = r.text.to_lowercase();
            terms.iter().any(|t| text.contains(t.as_str()))
        })
        .cloned()
        .collect();
    let mut out = Corpus::from_subset(kept, corpus);
    out.filter_terms_applied = Some(terms);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub dev_fraction: f64,
    pub train_fraction: f64,
    pub test_fraction: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            dev_fraction: 0.10,
            train_fraction: 0.80,
            test_fraction: 0.10,
            seed: 0,
        }
    }
}

impl SplitSpec {
    pub fn with_seed(seed: u64) -> Self {
        SplitSpec {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fr = [self.dev_fraction, self.train_fraction, self.test_fraction];
        if fr.iter().any(|f| !f.is_finite() || *f < 0.0) {
            return Err(Error::Config("split fractions must be finite and non-negative".into()));
        }
        if libm::fabs(fr.iter().sum::<f64>() - 1.0) > 1e-9 {
            return Err(Error::Config("split fractions must sum to 1".into()));
        }
        Ok(())
    }

    /// `(dev, train, test)` sizes for `n` records: dev and test are floored,
    /// train takes the remainder.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        let part = |frac: f64| -> usize {
            // The epsilon absorbs products like 0.1 * 30 landing a hair under 3.
            let raw = libm::floor(frac * n as f64 + 1e-9);
            (raw as usize).min(n)
        };
        let dev = part(self.dev_fraction);
        let test = part(self.test_fraction).min(n - dev);
        (dev, n - dev - test, test)
    }
}

/// Result of [`split`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splits {
    pub dev: Corpus,
    pub train: Corpus,
    pub test: Corpus,
}

/// Seeded Fisher-Yates permutation of `0..n`.
pub fn shuffled_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    idx
}

pub fn split(corpus: &Corpus, spec: &SplitSpec) -> Result<Splits> {
    spec.validate()?;
    let n = corpus.len();
    if n < 3 {
        return Err(Error::SplitTooSmall(n));
    }
    let (dev_n, train_n, _) = spec.sizes(n);
    let order = shuffled_indices(n, spec.seed);
    let mut shuffled: Vec<TweetRecord> = order.into_iter().map(|i| corpus.records[i].clone()).collect();
    let test = shuffled.split_off(dev_n + train_n);
    let train = shuffled.split_off(dev_n);
    Ok(Splits {
        dev: Corpus::from_subset(shuffled, corpus),
        train: Corpus::from_subset(train, corpus),
        test: Corpus::from_subset(test, corpus),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassShare {
    pub label: StanceLabel,
    pub count: usize,
    /// Percentage of the total, rounded to one decimal.
    pub percent: f64,
}

/// Per-label counts; empty when there are no labels to count.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassDistribution {
    pub shares: Vec<ClassShare>,
    pub total: usize,
}

impl ClassDistribution {
    pub fn from_counts(left: usize, right: usize) -> Self {
        let total = left + right;
        if total == 0 {
            return ClassDistribution::default();
        }
        let share = |label, count: usize| ClassShare {
            label,
            count,
            percent: libm::round(1000.0 * count as f64 / total as f64) / 10.0,
        };
        ClassDistribution {
            shares: alloc::vec![share(StanceLabel::Left, left), share(StanceLabel::Right, right)],
            total,
        }
    }

    pub fn get(&self, label: StanceLabel) -> Option<&ClassShare> {
        self.shares.iter().find(|s| s.label == label)
    }
}

pub fn class_distribution(corpus: &Corpus) -> ClassDistribution {
    let left = corpus.records.iter().filter(|r| r.label() == StanceLabel::Left).count();
    ClassDistribution::from_counts(left, corpus.len() - left)
}

impl fmt::Display for ClassDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.shares {
            writeln!(f, "{}\t{}\t{:.1}%", s.label, s.count, s.percent)?;
        }
        write!(f, "total\t{}", self.total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rec(id: &str, party: PartyCode, text: &str) -> TweetRecord {
        TweetRecord {
            id: id.into(),
            timestamp: Timestamp(0),
            username: "gov".into(),
            party,
            state: "NY".into(),
            text: text.into(),
        }
    }

    #[test]
    fn labels() {
        assert_eq!(assign_label(PartyCode::Democrat).value(), 1);
        assert_eq!(assign_label(PartyCode::NewProgressive).value(), 1);
        assert_eq!(assign_label(PartyCode::Republican).value(), -1);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let r = vec![rec("1", PartyCode::Democrat, "a"), rec("1", PartyCode::Republican, "b")];
        assert_eq!(Corpus::new(r, "t"), Err(Error::DuplicateId("1".into())));
    }

    #[test]
    fn covid_filter_substrings() {
        let c = Corpus::new(
            vec![
                rec("1", PartyCode::Democrat, "Wear a mask to slow the pandemic"),
                rec("2", PartyCode::Democrat, "Happy Thanksgiving everyone"),
                rec("3", PartyCode::Republican, "#COVID19 update at noon"),
            ],
            "t",
        )
        .unwrap();
        let f = filter_covid(&c, &DEFAULT_COVID_TERMS).unwrap();
        assert_eq!(f.ids().collect::<Vec<_>>(), ["1", "3"]);
        assert!(f.filter_terms_applied.is_some());
        assert_eq!(
            filter_covid::<&str>(&c, &[]).unwrap_err(),
            Error::Config("COVID filter term list is empty".into())
        );
    }

    #[test]
    fn split_sizes() {
        let s = SplitSpec::default();
        assert_eq!(s.sizes(100), (10, 80, 10));
        assert_eq!(s.sizes(16_248), (1_624, 13_000, 1_624));
        assert_eq!(s.sizes(3), (0, 3, 0));
    }

    #[test]
    fn split_too_small() {
        let c = Corpus::new(vec![rec("1", PartyCode::Democrat, "a")], "t").unwrap();
        assert_eq!(split(&c, &SplitSpec::default()), Err(Error::SplitTooSmall(1)));
    }

    #[test]
    fn bad_fractions() {
        let s = SplitSpec {
            dev_fraction: 0.5,
            ..Default::default()
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn distribution() {
        let d = ClassDistribution::from_counts(8_979, 7_269);
        assert_eq!(d.get(StanceLabel::Left).unwrap().percent, 55.3);
        assert_eq!(d.get(StanceLabel::Right).unwrap().percent, 44.7);
        let d = ClassDistribution::from_counts(1, 0);
        assert_eq!((d.shares[0].percent, d.shares[1].percent), (100.0, 0.0));
        let d = ClassDistribution::from_counts(10, 10);
        assert_eq!((d.shares[0].percent, d.shares[1].percent), (50.0, 50.0));
        assert!(class_distribution(&Corpus::default()).shares.is_empty());
    }
}
