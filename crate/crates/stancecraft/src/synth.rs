//! Synthetic labeled tweet corpora with known party vocabularies.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use stancecraft_core::corpus::{Corpus, PartyCode, StanceLabel, Timestamp, TweetRecord};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedWord {
    pub word: String,
    pub weight: f64,
}

impl WeightedWord {
    pub fn new(word: impl Into<String>, weight: f64) -> Self {
        WeightedWord {
            word: word.into(),
            weight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthRange {
    pub min: usize,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub n_tweets: usize,
    pub left_fraction: f64,
    pub shared_lexicon: Vec<WeightedWord>,
    #[serde(default)]
    pub left_lexicon: Vec<WeightedWord>,
    #[serde(default)]
    pub right_lexicon: Vec<WeightedWord>,
    pub tweet_length: LengthRange,
    #[serde(default)]
    pub seed: u64,
    /// First timestamp, seconds since the epoch.
    #[serde(default = "default_start")]
    pub start: i64,
}

fn default_start() -> i64 {
    // 2020-03-01T00:00:00Z
    1_583_020_800
}

pub const SHARED_WORDS: [&str; 20] = [
    "covid",
    "mask",
    "vaccine",
    "test",
    "case",
    "home",
    "health",
    "state",
    "update",
    "relief",
    "hospital",
    "school",
    "family",
    "county",
    "community",
    "week",
    "data",
    "support",
    "worker",
    "guidance",
];
pub const LEFT_WORDS: [&str; 5] = ["science", "equity", "frontline", "medicaid", "climate"];
pub const RIGHT_WORDS: [&str; 5] = ["freedom", "reopen", "liberty", "taxpayer", "border"];

const STATES: [&str; 10] = ["NY", "CA", "TX", "FL", "OH", "PA", "MI", "GA", "AZ", "WA"];

impl SyntheticSpec {
    /// 20 shared words of weight 1 and 5 words per party of weight 4, so
    /// about half of each tweet comes from its party's own lexicon.
    pub fn standard(n_tweets: usize, left_fraction: f64, seed: u64) -> Self {
        let lex = |words: &[&str], w| words.iter().map(|x| WeightedWord::new(*x, w)).collect();
        SyntheticSpec {
            n_tweets,
            left_fraction,
            shared_lexicon: lex(&SHARED_WORDS, 1.0),
            left_lexicon: lex(&LEFT_WORDS, 4.0),
            right_lexicon: lex(&RIGHT_WORDS, 4.0),
            tweet_length: LengthRange { min: 8, max: 16 },
            seed,
            start: default_start(),
        }
    }

    /// Same spec with both party lexicons removed: the parties become
    /// indistinguishable.
    pub fn without_party_lexicons(mut self) -> Self {
        self.left_lexicon.clear();
        self.right_lexicon.clear();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n_tweets == 0 {
            return bad("n_tweets must be at least 1".into());
        }
        if !(self.left_fraction > 0.0 && self.left_fraction < 1.0) {
            return bad(format!("left_fraction must lie in (0, 1), got {}", self.left_fraction));
        }
        if self.tweet_length.min == 0 || self.tweet_length.min > self.tweet_length.max {
            return bad(format!(
                "tweet_length must satisfy 1 <= min <= max, got {}..={}",
                self.tweet_length.min, self.tweet_length.max
            ));
        }
        for w in self
            .shared_lexicon
            .iter()
            .chain(&self.left_lexicon)
            .chain(&self.right_lexicon)
        {
            if !(w.weight > 0.0 && w.weight.is_finite()) {
                return bad(format!("weight of {:?} must be positive, got {}", w.word, w.weight));
            }
            if w.word.is_empty() || w.word.chars().any(char::is_whitespace) {
                return bad(format!("lexicon word {:?} must be a single non-empty token", w.word));
            }
        }
        if self.shared_lexicon.is_empty() && (self.left_lexicon.is_empty() || self.right_lexicon.is_empty()) {
            return bad("each party needs at least one word to draw from".into());
        }
        Ok(())
    }
}

fn pool(shared: &[WeightedWord], own: &[WeightedWord]) -> (Vec<String>, WeightedIndex<f64>) {
    let all: Vec<&WeightedWord> = shared.iter().chain(own).collect();
    let words = all.iter().map(|w| w.word.clone()).collect();
    let dist = WeightedIndex::new(all.iter().map(|w| w.weight)).expect("validated weights");
    (words, dist)
}

/// Labels are drawn i.i.d. with P(left) = `left_fraction`; tokens are drawn
/// by weight from the shared lexicon plus the author's party lexicon.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Corpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let left = pool(&spec.shared_lexicon, &spec.left_lexicon);
    let right = pool(&spec.shared_lexicon, &spec.right_lexicon);
    let mut t = spec.start;
    let mut records = Vec::with_capacity(spec.n_tweets);
    for i in 0..spec.n_tweets {
        let label = if rng.gen_bool(spec.left_fraction) {
            StanceLabel::Left
        } else {
            StanceLabel::Right
        };
        let (party, state) = match label {
            StanceLabel::Left if rng.gen_bool(0.05) => (PartyCode::NewProgressive, "PR"),
            StanceLabel::Left => (PartyCode::Democrat, STATES[rng.gen_range(0..STATES.len())]),
            StanceLabel::Right => (PartyCode::Republican, STATES[rng.gen_range(0..STATES.len())]),
        };
        let (words, dist) = if label == StanceLabel::Left { &left } else { &right };
        let len = rng.gen_range(spec.tweet_length.min..=spec.tweet_length.max);
        let text = (0..len)
            .map(|_| words[dist.sample(&mut rng)].as_str())
            .collect::<Vec<_>>()
            .join(" ");
        t += rng.gen_range(60..=3600);
        records.push(TweetRecord {
            id: format!("syn{:06}", i + 1),
            timestamp: Timestamp(t),
            username: format!("{}_official_{:02}", party.as_str().to_lowercase(), rng.gen_range(0..25)),
            party,
            state: state.into(),
            text,
        });
    }
    Corpus::new(records, format!("synthetic seed={}", spec.seed)).map_err(Into::into)
}
