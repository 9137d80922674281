//! Multi-step operations shared by the command-line front end and tests.

use std::path::Path;

use stancecraft_core::classify::{
    explain_misclassification, features, run_grid, ClassifierSpec, EvalReport, GridCell, GridOptions, PreparedSplit,
    SvmConfig, TextClassifier,
};
use stancecraft_core::corpus::{split, Corpus, SplitSpec, StanceLabel};
use stancecraft_core::ngram::{
    bigram_counts, bow_counts, distinct_keywords, matched_comparison, unique_top, FrequencyTable, KeywordFilterRules,
};
use stancecraft_core::textprep::{CleaningMode, Normalizer, PreprocessConfig, TokenizedDoc};
use stancecraft_core::windowed::{
    chronological_pass, tfidf_distinct, top_repeated, CategoryMap, MaxTfidfRecord, TfidfConfig, TfidfDistinctRule,
};

use crate::chart::{self, ChartKind, ChartRow};
use crate::config::{ClassifySettings, InputSettings, PreprocessSettings, ProfileSettings, Settings};
use crate::error::{Error, Result};
use crate::export::{self, DistinctRow, ExplainRow};
use crate::ingest::{parse_timestamp, DateRange, Reject};
use crate::manifest::OutputDir;
use crate::model_io::ModelFile;
use crate::resources;

pub fn date_range(input: &InputSettings) -> Result<DateRange> {
    let parse = |s: &Option<String>| -> Result<_> {
        match s {
            None => Ok(None),
            Some(text) => parse_timestamp(text)
                .map(Some)
                .ok_or_else(|| Error::Config(format!("cannot parse date {text:?}"))),
        }
    };
    Ok(DateRange {
        from: parse(&input.from)?,
        to: parse(&input.to)?,
    })
}

/// A persisted corpus or a raw export, narrowed to the configured dates.
pub fn load_corpus(path: &Path, settings: &Settings) -> Result<(Corpus, Vec<Reject>)> {
    crate::persist::load_any(path, settings.input.format, &date_range(&settings.input)?)
}

pub fn build_normalizer(p: &PreprocessSettings) -> Result<Normalizer> {
    let mut n = Normalizer::english();
    if let Some(path) = &p.stoplist {
        n.policy.base_list = resources::load_stoplist(path)?;
    }
    if let Some(words) = &p.custom_stopwords {
        n.policy.custom_additions = words.iter().map(|w| w.to_lowercase()).collect();
    }
    if let Some(path) = &p.lemma_dict {
        n.dictionary = resources::load_lemma_dictionary(path)?;
    }
    Ok(n)
}

pub fn preprocess_config(p: &PreprocessSettings) -> PreprocessConfig {
    PreprocessConfig {
        mode: p.mode,
        keep_hashtags: p.keep_hashtags,
    }
}

pub fn preprocess_corpus(corpus: &Corpus, n: &Normalizer, cfg: &PreprocessConfig) -> Vec<TokenizedDoc> {
    corpus.records().iter().map(|r| n.preprocess(r, cfg)).collect()
}

/// Documents of each side, in chronological order (ties keep file order).
#[derive(Debug, Clone, Default)]
pub struct PartyDocs {
    pub left: Vec<TokenizedDoc>,
    pub right: Vec<TokenizedDoc>,
}

impl PartyDocs {
    pub fn new(docs: Vec<TokenizedDoc>) -> Self {
        let (mut left, mut right): (Vec<_>, Vec<_>) = docs.into_iter().partition(|d| d.label == StanceLabel::Left);
        left.sort_by_key(|d| d.timestamp);
        right.sort_by_key(|d| d.timestamp);
        PartyDocs { left, right }
    }

    pub fn get(&self, label: StanceLabel) -> &[TokenizedDoc] {
        match label {
            StanceLabel::Left => &self.left,
            StanceLabel::Right => &self.right,
        }
    }
}

pub fn filter_rules(p: &ProfileSettings, mode: CleaningMode, n: &Normalizer) -> Result<KeywordFilterRules> {
    let rules = match &p.filters {
        Some(dir) => resources::load_filter_rules(dir)?,
        None => resources::bundled_filter_rules(),
    };
    let mut rules = rules.with_normalized_forms(|w| resources::normalize_entry(w, mode, n));
    rules.keep_names = p.keep_names;
    Ok(rules)
}

pub fn category_map(p: &ProfileSettings, mode: CleaningMode, n: &Normalizer) -> Result<CategoryMap> {
    let map = match &p.categories {
        Some(path) => resources::load_category_map(path)?,
        None => CategoryMap::default_map(),
    };
    Ok(map.with_normalized_forms(|w| resources::normalize_entry(w, mode, n)))
}

fn need_both(docs: &PartyDocs) -> Result<()> {
    if docs.left.is_empty() || docs.right.is_empty() {
        return Err(Error::Format(format!(
            "profiling needs tweets from both sides (left {}, right {})",
            docs.left.len(),
            docs.right.len()
        )));
    }
    Ok(())
}

fn series() -> Vec<String> {
    vec!["left (+1)".into(), "right (-1)".into()]
}

fn write_chart(out: &mut OutputDir, name: &str, rows: Vec<ChartRow>, kind: ChartKind, title: &str) -> Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    let svg = chart::render(&rows, kind, title, &series())?;
    out.write(name, svg.as_bytes())?;
    Ok(())
}

/// Bag-of-words or bigram frequency profile of both sides.
pub struct CountProfile {
    pub model: &'static str,
    pub left: Vec<(String, u64)>,
    pub right: Vec<(String, u64)>,
    pub matched: Vec<(String, u64, u64)>,
    pub unique_left: Vec<(String, u64)>,
    pub unique_right: Vec<(String, u64)>,
    pub distinct: Vec<DistinctRow>,
}

fn stringify<K: std::fmt::Display>(rows: Vec<(K, u64)>) -> Vec<(String, u64)> {
    rows.into_iter().map(|(k, c)| (k.to_string(), c)).collect()
}

pub fn bow_profile(docs: &PartyDocs, p: &ProfileSettings, rules: &KeywordFilterRules) -> Result<CountProfile> {
    need_both(docs)?;
    let left = bow_counts(&docs.left)?;
    let right = bow_counts(&docs.right)?;
    let mut distinct = Vec::new();
    for (party, own, other) in [(StanceLabel::Left, &left, &right), (StanceLabel::Right, &right, &left)] {
        for k in distinct_keywords(own, other, p.bow_ratio, p.min_difference)? {
            if !rules.drops(&k.key) {
                distinct.push(DistinctRow::from_keyword("bow", party, &k));
            }
        }
    }
    Ok(CountProfile {
        model: "bow",
        matched: matched_comparison(&left, &right, p.bow_top),
        unique_left: unique_top(&left, &right, p.bow_top),
        unique_right: unique_top(&right, &left, p.bow_top),
        left: left.ranked(),
        right: right.ranked(),
        distinct,
    })
}

/// Expects documents preprocessed with hashtags dropped.
pub fn bigram_profile(docs: &PartyDocs, p: &ProfileSettings, rules: &KeywordFilterRules) -> Result<CountProfile> {
    need_both(docs)?;
    let left = bigram_counts(&docs.left)?.pairs;
    let right = bigram_counts(&docs.right)?.pairs;
    let mut distinct = Vec::new();
    for (party, own, other) in [(StanceLabel::Left, &left, &right), (StanceLabel::Right, &right, &left)] {
        for k in distinct_keywords(own, other, p.bigram_ratio, p.min_difference)? {
            if !rules.drops(&k.key) {
                distinct.push(DistinctRow::from_keyword("bigram", party, &k));
            }
        }
    }
    let matched = matched_comparison(&left, &right, p.bigram_top)
        .into_iter()
        .map(|(k, a, b)| (k.to_string(), a, b))
        .collect();
    Ok(CountProfile {
        model: "bigram",
        matched,
        unique_left: stringify(unique_top(&left, &right, p.bigram_top)),
        unique_right: stringify(unique_top(&right, &left, p.bigram_top)),
        left: stringify(left.ranked()),
        right: stringify(right.ranked()),
        distinct,
    })
}

fn distinct_chart_rows(rows: &[DistinctRow], party: StanceLabel, limit: usize) -> Vec<ChartRow> {
    rows.iter()
        .filter(|r| r.party == party)
        .take(limit)
        .map(|r| ChartRow::new(r.key.clone(), vec![r.difference]))
        .collect()
}

impl CountProfile {
    pub fn emit(&self, out: &mut OutputDir, with_distinct: bool) -> Result<()> {
        let m = self.model;
        out.write(&format!("{m}_left.csv"), &export::counts(&self.left)?)?;
        out.write(&format!("{m}_right.csv"), &export::counts(&self.right)?)?;
        out.write(&format!("{m}_matched.csv"), &export::comparison(&self.matched)?)?;
        out.write(&format!("{m}_unique_left.csv"), &export::counts(&self.unique_left)?)?;
        out.write(&format!("{m}_unique_right.csv"), &export::counts(&self.unique_right)?)?;
        let rows = self
            .matched
            .iter()
            .map(|(k, a, b)| ChartRow::new(k.clone(), vec![*a as f64, *b as f64]))
            .collect();
        write_chart(
            out,
            &format!("{m}_matched.svg"),
            rows,
            ChartKind::GroupedBar,
            &format!("{m}: shared top keys"),
        )?;
        for (side, rows) in [("left", &self.unique_left), ("right", &self.unique_right)] {
            let rows = rows
                .iter()
                .map(|(k, c)| ChartRow::new(k.clone(), vec![*c as f64]))
                .collect();
            write_chart(
                out,
                &format!("{m}_unique_{side}.svg"),
                rows,
                ChartKind::DiffBar,
                &format!("{m}: top keys only on the {side}"),
            )?;
        }
        if with_distinct {
            out.write(&format!("{m}_distinct.csv"), &export::distinct(&self.distinct)?)?;
        }
        Ok(())
    }
}

pub struct TfidfProfile {
    pub left: Vec<MaxTfidfRecord>,
    pub right: Vec<MaxTfidfRecord>,
    pub top_left: Vec<(String, u64, String)>,
    pub top_right: Vec<(String, u64, String)>,
    pub distinct: Vec<DistinctRow>,
    /// Tweets skipped because cleaning left no tokens, per side.
    pub skipped: [usize; 2],
}

fn nonempty(docs: &[TokenizedDoc]) -> Vec<TokenizedDoc> {
    docs.iter().filter(|d| !d.tokens.is_empty()).cloned().collect()
}

pub fn distinct_rule(p: &ProfileSettings) -> TfidfDistinctRule {
    match p.tfidf_score_margin {
        Some(m) => TfidfDistinctRule::ScoreMargin(m),
        None => TfidfDistinctRule::RepetitionMargin(p.tfidf_margin),
    }
}

/// Each side's tweets scored against windows of the other side.
pub fn tfidf_profile(
    docs: &PartyDocs,
    p: &ProfileSettings,
    rules: &KeywordFilterRules,
    categories: &CategoryMap,
) -> Result<TfidfProfile> {
    let left = nonempty(&docs.left);
    let right = nonempty(&docs.right);
    need_both(&PartyDocs {
        left: left.clone(),
        right: right.clone(),
    })?;
    let cfg = TfidfConfig {
        window: p.window.0,
        ..TfidfConfig::default()
    };
    let rec_left = chronological_pass(&left, &right, &cfg)?;
    let rec_right = chronological_pass(&right, &left, &cfg)?;
    let top = |recs: &[MaxTfidfRecord]| {
        top_repeated(recs, p.tfidf_top)
            .into_iter()
            .map(|(w, c)| {
                let cat = categories.category(&w).to_string();
                (w, c, cat)
            })
            .collect::<Vec<_>>()
    };
    let rule = distinct_rule(p);
    let mut distinct = Vec::new();
    for (party, own, other) in [
        (StanceLabel::Left, &rec_left, &rec_right),
        (StanceLabel::Right, &rec_right, &rec_left),
    ] {
        for d in tfidf_distinct(own, other, rule) {
            if !rules.drops(&d.word) {
                distinct.push(DistinctRow::from_tfidf(party, &d));
            }
        }
    }
    Ok(TfidfProfile {
        top_left: top(&rec_left),
        top_right: top(&rec_right),
        left: rec_left,
        right: rec_right,
        distinct,
        skipped: [docs.left.len() - left.len(), docs.right.len() - right.len()],
    })
}

impl TfidfProfile {
    pub fn emit(&self, out: &mut OutputDir, with_distinct: bool) -> Result<()> {
        out.write("tfidf_left.csv", &export::tfidf_records(&self.left)?)?;
        out.write("tfidf_right.csv", &export::tfidf_records(&self.right)?)?;
        for (side, top) in [("left", &self.top_left), ("right", &self.top_right)] {
            out.write(&format!("tfidf_top_{side}.csv"), &export::top_repeated(top)?)?;
            let rows = top
                .iter()
                .map(|(w, c, cat)| ChartRow::new(format!("{w} [{cat}]"), vec![*c as f64]))
                .collect();
            write_chart(
                out,
                &format!("tfidf_top_{side}.svg"),
                rows,
                ChartKind::DiffBar,
                &format!("most repeated max TF-IDF words, {side}"),
            )?;
        }
        if with_distinct {
            out.write("tfidf_distinct.csv", &export::distinct(&self.distinct)?)?;
        }
        Ok(())
    }
}

/// Writes the combined distinct-keyword table and one difference chart
/// per model and side.
pub fn emit_distinct(out: &mut OutputDir, rows: &[DistinctRow], chart_limit: usize) -> Result<()> {
    out.write("distinct.csv", &export::distinct(rows)?)?;
    for model in ["bow", "bigram", "tfidf"] {
        let of_model: Vec<DistinctRow> = rows.iter().filter(|r| r.model == model).cloned().collect();
        for party in StanceLabel::BOTH {
            let side = if party == StanceLabel::Left { "left" } else { "right" };
            let chart_rows = distinct_chart_rows(&of_model, party, chart_limit);
            write_chart(
                out,
                &format!("distinct_{model}_{side}.svg"),
                chart_rows,
                ChartKind::DiffBar,
                &format!("{model}: distinct keywords, {side}"),
            )?;
        }
    }
    Ok(())
}

pub fn classifier_spec(c: &ClassifySettings, seed: u64) -> ClassifierSpec {
    ClassifierSpec {
        ngram_range: c.ngram.0,
        vectorizer: c.vectorizer,
        classifier: c.classifier,
        nb_alpha: c.alpha,
        svm: SvmConfig {
            lambda: c.lambda,
            epochs: c.epochs,
            seed,
        },
    }
}

pub fn train_model(train: &Corpus, settings: &Settings) -> Result<ModelFile> {
    let normalizer = build_normalizer(&settings.preprocess)?;
    let cfg = preprocess_config(&settings.preprocess);
    let docs = preprocess_corpus(train, &normalizer, &cfg);
    let spec = classifier_spec(&settings.classify, settings.seed());
    let classifier = TextClassifier::train(&docs, &spec)?;
    Ok(ModelFile::new(
        settings.seed(),
        train.provenance.clone(),
        train.len(),
        cfg,
        normalizer,
        classifier,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub source_id: String,
    pub gold: StanceLabel,
    pub predicted: StanceLabel,
    pub score: f64,
}

pub fn predict_corpus(model: &ModelFile, corpus: &Corpus) -> Result<Vec<Prediction>> {
    preprocess_corpus(corpus, &model.normalizer, &model.preprocess)
        .into_iter()
        .map(|d| {
            let (predicted, score) = model.classifier.predict(&d.tokens)?;
            Ok(Prediction {
                source_id: d.source_id,
                gold: d.label,
                predicted,
                score,
            })
        })
        .collect()
}

pub fn evaluate_predictions(preds: &[Prediction]) -> Result<EvalReport> {
    let p: Vec<_> = preds.iter().map(|x| x.predicted).collect();
    let g: Vec<_> = preds.iter().map(|x| x.gold).collect();
    Ok(stancecraft_core::classify::evaluate(&p, &g)?)
}

/// Per-side feature counts over the training documents, in the model's
/// feature space.
pub fn training_feature_stats(model: &ModelFile, train: &Corpus) -> [FrequencyTable; 2] {
    let range = model.classifier.spec.ngram_range;
    let mut stats = [
        FrequencyTable::new(Some(StanceLabel::Left)),
        FrequencyTable::new(Some(StanceLabel::Right)),
    ];
    for d in preprocess_corpus(train, &model.normalizer, &model.preprocess) {
        for f in features(&d.tokens, range) {
            stats[d.label.index()].add(f, 1);
        }
    }
    stats
}

/// Explanation rows for misclassified tweets (or every tweet with `all`),
/// keeping the `top` strongest features of each.
pub fn explain_corpus(
    model: &ModelFile,
    corpus: &Corpus,
    train: &Corpus,
    all: bool,
    top: usize,
) -> Result<Vec<ExplainRow>> {
    let [left, right] = training_feature_stats(model, train);
    let clf = &model.classifier;
    let mut rows = Vec::new();
    for d in preprocess_corpus(corpus, &model.normalizer, &model.preprocess) {
        let x = clf.vectorize(&d.tokens)?;
        let e = explain_misclassification(&clf.model, &clf.vocab, &x, &left, &right)?;
        if !all && e.predicted == d.label {
            continue;
        }
        for r in e.rows.into_iter().take(top) {
            rows.push(ExplainRow {
                source_id: d.source_id.clone(),
                gold: d.label,
                predicted: e.predicted,
                feature: r.feature,
                count_left: r.count_left,
                count_right: r.count_right,
                contribution: r.contribution,
            });
        }
    }
    Ok(rows)
}

pub fn grid(train: &Corpus, test: &Corpus, settings: &Settings) -> Result<Vec<GridCell>> {
    let normalizer = build_normalizer(&settings.preprocess)?;
    let splits: Vec<PreparedSplit> = settings
        .grid
        .modes
        .iter()
        .map(|&mode| {
            let cfg = PreprocessConfig {
                mode,
                keep_hashtags: settings.preprocess.keep_hashtags,
            };
            PreparedSplit {
                cleaning: mode,
                train: preprocess_corpus(train, &normalizer, &cfg),
                test: preprocess_corpus(test, &normalizer, &cfg),
            }
        })
        .collect();
    let spec = classifier_spec(&settings.classify, settings.seed());
    let opts = GridOptions {
        ranges: settings.grid.ranges.iter().map(|r| r.0).collect(),
        vectorizers: settings.grid.vectorizers.clone(),
        classifiers: settings.grid.classifiers.clone(),
        nb_alpha: spec.nb_alpha,
        svm: spec.svm,
    };
    Ok(run_grid(&splits, &opts)?)
}

pub fn split_spec(settings: &Settings) -> SplitSpec {
    SplitSpec {
        dev_fraction: settings.split.dev,
        train_fraction: settings.split.train,
        test_fraction: settings.split.test,
        seed: settings.seed(),
    }
}

/// Seeded split, train on the training part, score the test part.
pub fn holdout_eval(corpus: &Corpus, settings: &Settings) -> Result<EvalReport> {
    let parts = split(corpus, &split_spec(settings))?;
    let model = train_model(&parts.train, settings)?;
    evaluate_predictions(&predict_corpus(&model, &parts.test)?)
}
