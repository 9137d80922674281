//! Command-line front end. Every command writes its outputs and a
//! `manifest.json` into the output directory.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use stancecraft_core::classify::{ClassifierKind, VectorizerKind};
use stancecraft_core::corpus::{class_distribution, filter_covid, split, Corpus, DEFAULT_COVID_TERMS};
use stancecraft_core::textprep::{CleaningMode, PreprocessConfig};

use crate::chart::{self, ChartKind};
use crate::config::{NgramArg, Settings, WindowArg, SEED_ENV};
use crate::error::{Error, Result};
use crate::export;
use crate::ingest::{self, InputFormat, Reject};
use crate::manifest::OutputDir;
use crate::model_io::ModelFile;
use crate::persist;
use crate::pipeline::{self, PartyDocs};
use crate::synth::{self, SyntheticSpec};

#[derive(Debug, Parser)]
#[command(
    name = "stancecraft",
    version,
    about = "Partisan stance profiling and classification of political tweets"
)]
pub struct Cli {
    /// TOML settings file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for splits, SVM shuffles and synthetic corpora.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory (default `out`).
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Tweet export (JSON lines or CSV) or a persisted corpus.
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Keep tweets at or after this date.
    #[arg(long)]
    pub from: Option<String>,
    /// Keep tweets at or before this date.
    #[arg(long)]
    pub to: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct PrepArgs {
    /// `stem` or `lemma`.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<CleaningMode>,
    #[arg(long)]
    pub keep_hashtags: Option<bool>,
    /// One stopword per line; replaces the bundled English list.
    #[arg(long)]
    pub stoplist: Option<PathBuf>,
    /// Replaces the bundled lemma dictionary.
    #[arg(long)]
    pub lemma_dict: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub prep: PrepArgs,
    /// How many keys to keep in the top lists.
    #[arg(long)]
    pub top: Option<usize>,
    /// Opposing-party window: a tweet count or `all`.
    #[arg(long)]
    pub window: Option<WindowArg>,
    /// Directory with states.txt, names.txt, nonenglish.txt, acronyms.txt.
    #[arg(long)]
    pub filters: Option<PathBuf>,
    /// Also filter person names out of distinct keywords.
    #[arg(long)]
    pub drop_names: bool,
    /// Tab-separated word/category file.
    #[arg(long)]
    pub categories: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProfileModel {
    Bow,
    Bigram,
    Tfidf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a raw export and persist it as a corpus.
    Ingest {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Keep tweets mentioning COVID-19.
    Filter {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated terms, matched case-insensitively as substrings.
        #[arg(long, value_delimiter = ',', conflicts_with = "terms_default")]
        terms: Option<Vec<String>>,
        /// Use the built-in COVID term list.
        #[arg(long)]
        terms_default: bool,
    },
    /// Tokenize, clean and stem or lemmatize every tweet.
    Preprocess {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        prep: PrepArgs,
    },
    /// Seeded dev/train/test split.
    Split {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        dev: Option<f64>,
        #[arg(long)]
        train: Option<f64>,
        #[arg(long)]
        test: Option<f64>,
    },
    /// Keyword profile of both sides under one model.
    Profile {
        #[arg(value_enum)]
        model: ProfileModel,
        #[command(flatten)]
        args: ProfileArgs,
    },
    /// Distinct keywords of each side under all three models.
    Distinct {
        #[command(flatten)]
        args: ProfileArgs,
    },
    /// Train a stance classifier.
    Train {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        prep: PrepArgs,
        /// 1-1, 1-2 or 2-2.
        #[arg(long)]
        ngram: Option<NgramArg>,
        #[arg(long, value_parser = parse_vectorizer)]
        vectorizer: Option<VectorizerKind>,
        #[arg(long, value_parser = parse_classifier)]
        classifier: Option<ClassifierKind>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        epochs: Option<usize>,
        /// Naive Bayes smoothing.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Score a trained model on labelled tweets.
    Eval {
        model: PathBuf,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Every cleaning mode, n-gram range, vectorizer and classifier.
    Grid {
        train: PathBuf,
        test: PathBuf,
        #[command(flatten)]
        prep: PrepArgs,
    },
    /// Per-feature breakdown of misclassified tweets.
    Explain {
        model: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        /// Corpus the model was trained on, for per-side feature counts.
        #[arg(long)]
        train: PathBuf,
        /// Explain every tweet, not only misclassified ones.
        #[arg(long)]
        all: bool,
        /// Features kept per tweet.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Generate a labelled synthetic corpus.
    Synth {
        /// TOML generator spec; overrides the flags below.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 0.553)]
        left_fraction: f64,
        /// Drop the party-specific vocabularies.
        #[arg(long)]
        zero_party: bool,
    },
    /// Render a CSV of label,value[,value] rows as an SVG bar chart.
    Chart {
        csv: PathBuf,
        #[arg(long, value_enum, default_value_t = ChartKind::GroupedBar)]
        kind: ChartKind,
        #[arg(long, default_value = "")]
        title: String,
        /// Output file name.
        #[arg(long)]
        name: Option<String>,
    },
}

fn parse_mode(s: &str) -> std::result::Result<CleaningMode, String> {
    match s.to_ascii_lowercase().as_str() {
        "stem" => Ok(CleaningMode::Stem),
        "lemma" => Ok(CleaningMode::Lemma),
        _ => Err(format!("expected `stem` or `lemma`, got {s:?}")),
    }
}

fn parse_vectorizer(s: &str) -> std::result::Result<VectorizerKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "count" => Ok(VectorizerKind::Count),
        "tfidf" => Ok(VectorizerKind::Tfidf),
        _ => Err(format!("expected `count` or `tfidf`, got {s:?}")),
    }
}

fn parse_classifier(s: &str) -> std::result::Result<ClassifierKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "svm" => Ok(ClassifierKind::Svm),
        "nb" => Ok(ClassifierKind::Nb),
        _ => Err(format!("expected `svm` or `nb`, got {s:?}")),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Session {
    settings: Settings,
    inputs: Vec<PathBuf>,
}

impl Session {
    fn apply_input(&mut self, a: &InputArgs) {
        if a.format.is_some() {
            self.settings.input.format = a.format;
        }
        if a.from.is_some() {
            self.settings.input.from = a.from.clone();
        }
        if a.to.is_some() {
            self.settings.input.to = a.to.clone();
        }
    }

    fn apply_prep(&mut self, p: &PrepArgs) {
        let s = &mut self.settings.preprocess;
        if let Some(m) = p.mode {
            s.mode = m;
        }
        if let Some(k) = p.keep_hashtags {
            s.keep_hashtags = k;
        }
        if p.stoplist.is_some() {
            s.stoplist = p.stoplist.clone();
        }
        if p.lemma_dict.is_some() {
            s.lemma_dict = p.lemma_dict.clone();
        }
    }

    fn apply_profile(&mut self, a: &ProfileArgs, model: Option<ProfileModel>) {
        self.apply_input(&a.input);
        self.apply_prep(&a.prep);
        let p = &mut self.settings.profile;
        if let Some(top) = a.top {
            match model {
                Some(ProfileModel::Bow) => p.bow_top = top,
                Some(ProfileModel::Bigram) => p.bigram_top = top,
                Some(ProfileModel::Tfidf) => p.tfidf_top = top,
                None => {
                    p.bow_top = top;
                    p.bigram_top = top;
                    p.tfidf_top = top;
                }
            }
        }
        if let Some(w) = a.window {
            p.window = w;
        }
        if a.filters.is_some() {
            p.filters = a.filters.clone();
        }
        if a.drop_names {
            p.keep_names = false;
        }
        if a.categories.is_some() {
            p.categories = a.categories.clone();
        }
    }

    /// Loads a corpus, reporting rejected rows on stderr.
    fn corpus(&mut self, path: &Path) -> Result<Corpus> {
        let (corpus, rejects) = pipeline::load_corpus(path, &self.settings)?;
        warn_rejects(path, &rejects);
        self.inputs.push(path.to_path_buf());
        Ok(corpus)
    }

    fn resource_inputs(&mut self) {
        let p = &self.settings.preprocess;
        for path in [&p.stoplist, &p.lemma_dict].into_iter().flatten() {
            self.inputs.push(path.clone());
        }
    }

    fn finish(self, out: OutputDir, command: &str, options: serde_json::Value) -> Result<()> {
        let config = json!({ "settings": self.settings, "options": options });
        out.finish(command, self.settings.seed(), &config, &self.inputs)?;
        Ok(())
    }
}

fn warn_rejects(path: &Path, rejects: &[Reject]) {
    if !rejects.is_empty() {
        eprintln!("warning: {}: {} rows rejected", path.display(), rejects.len());
    }
}

fn jsonl<T: serde::Serialize>(items: &[T]) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    for item in items {
        serde_json::to_writer(&mut bytes, item)?;
        bytes.push(b'\n');
    }
    Ok(bytes)
}

fn party_docs(corpus: &Corpus, settings: &Settings, keep_hashtags: bool) -> Result<PartyDocs> {
    let normalizer = pipeline::build_normalizer(&settings.preprocess)?;
    let cfg = PreprocessConfig {
        mode: settings.preprocess.mode,
        keep_hashtags,
    };
    Ok(PartyDocs::new(pipeline::preprocess_corpus(corpus, &normalizer, &cfg)))
}

fn profile(
    model: ProfileModel,
    corpus: &Corpus,
    settings: &Settings,
    out: &mut OutputDir,
    emit: bool,
) -> Result<Vec<export::DistinctRow>> {
    let s = &settings.preprocess;
    let normalizer = pipeline::build_normalizer(s)?;
    let rules = pipeline::filter_rules(&settings.profile, s.mode, &normalizer)?;
    match model {
        ProfileModel::Bow => {
            let docs = party_docs(corpus, settings, s.keep_hashtags)?;
            let p = pipeline::bow_profile(&docs, &settings.profile, &rules)?;
            if emit {
                p.emit(out, true)?;
            }
            Ok(p.distinct)
        }
        ProfileModel::Bigram => {
            let docs = party_docs(corpus, settings, false)?;
            let p = pipeline::bigram_profile(&docs, &settings.profile, &rules)?;
            if emit {
                p.emit(out, true)?;
            }
            Ok(p.distinct)
        }
        ProfileModel::Tfidf => {
            let docs = party_docs(corpus, settings, s.keep_hashtags)?;
            let categories = pipeline::category_map(&settings.profile, s.mode, &normalizer)?;
            let p = pipeline::tfidf_profile(&docs, &settings.profile, &rules, &categories)?;
            let [l, r] = p.skipped;
            if l + r > 0 {
                eprintln!("note: {l} left and {r} right tweets have no tokens after cleaning and were skipped");
            }
            if emit {
                p.emit(out, true)?;
            }
            Ok(p.distinct)
        }
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    let mut settings = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let env = std::env::var(SEED_ENV).ok();
    settings.resolve_seed(cli.seed, env.as_deref())?;
    if let Some(out) = &cli.out {
        settings.out = out.clone();
    }
    let mut out = OutputDir::create(&settings.out)?;
    let mut session = Session {
        settings,
        inputs: cli.config.iter().cloned().collect(),
    };

    match cli.command {
        Command::Ingest { input } => {
            session.apply_input(&input);
            let (corpus, rejects) = pipeline::load_corpus(&input.input, &session.settings)?;
            session.inputs.push(input.input.clone());
            let n = corpus.len();
            let r = rejects.len();
            out.write("corpus.jsonl", &persist::to_bytes(&corpus)?)?;
            out.write("rejects.csv", &export::rejects(&rejects)?)?;
            out.write(
                "stage_counts.csv",
                &export::stage_counts(&[("read", n + r), ("rejected", r), ("accepted", n)])?,
            )?;
            warn_rejects(&input.input, &rejects);
            session.finish(out, "ingest", json!({}))
        }
        Command::Filter {
            input,
            terms,
            terms_default,
        } => {
            session.apply_input(&input);
            if terms_default {
                session.settings.filter_terms = DEFAULT_COVID_TERMS.iter().map(|s| s.to_string()).collect();
            } else if let Some(t) = terms {
                session.settings.filter_terms = t;
            }
            let corpus = session.corpus(&input.input)?;
            let kept = filter_covid(&corpus, &session.settings.filter_terms)?;
            out.write("filtered.jsonl", &persist::to_bytes(&kept)?)?;
            out.write(
                "stage_counts.csv",
                &export::stage_counts(&[("input", corpus.len()), ("covid_filtered", kept.len())])?,
            )?;
            session.finish(out, "filter", json!({}))
        }
        Command::Preprocess { input, prep } => {
            session.apply_input(&input);
            session.apply_prep(&prep);
            session.resource_inputs();
            let corpus = session.corpus(&input.input)?;
            let normalizer = pipeline::build_normalizer(&session.settings.preprocess)?;
            let cfg = pipeline::preprocess_config(&session.settings.preprocess);
            let docs = pipeline::preprocess_corpus(&corpus, &normalizer, &cfg);
            out.write("tokens.jsonl", &jsonl(&docs)?)?;
            session.finish(out, "preprocess", json!({}))
        }
        Command::Split {
            input,
            dev,
            train,
            test,
        } => {
            session.apply_input(&input);
            let s = &mut session.settings.split;
            s.dev = dev.unwrap_or(s.dev);
            s.train = train.unwrap_or(s.train);
            s.test = test.unwrap_or(s.test);
            let corpus = session.corpus(&input.input)?;
            let parts = split(&corpus, &pipeline::split_spec(&session.settings))?;
            let mut sizes = Vec::new();
            for (name, part) in [("dev", &parts.dev), ("train", &parts.train), ("test", &parts.test)] {
                out.write(&format!("{name}.jsonl"), &persist::to_bytes(part)?)?;
                sizes.push((name, part.len()));
            }
            out.write("split_sizes.csv", &export::stage_counts(&sizes)?)?;
            out.write(
                "class_distribution.csv",
                &export::class_distribution(&class_distribution(&corpus))?,
            )?;
            session.finish(out, "split", json!({}))
        }
        Command::Profile { model, args } => {
            session.apply_profile(&args, Some(model));
            session.resource_inputs();
            let corpus = session.corpus(&args.input.input)?;
            profile(model, &corpus, &session.settings, &mut out, true)?;
            let name = match model {
                ProfileModel::Bow => "profile bow",
                ProfileModel::Bigram => "profile bigram",
                ProfileModel::Tfidf => "profile tfidf",
            };
            session.finish(out, name, json!({}))
        }
        Command::Distinct { args } => {
            session.apply_profile(&args, None);
            session.resource_inputs();
            let corpus = session.corpus(&args.input.input)?;
            let mut rows = Vec::new();
            for model in [ProfileModel::Bow, ProfileModel::Bigram, ProfileModel::Tfidf] {
                rows.extend(profile(model, &corpus, &session.settings, &mut out, false)?);
            }
            pipeline::emit_distinct(&mut out, &rows, session.settings.profile.bow_top)?;
            session.finish(out, "distinct", json!({}))
        }
        Command::Train {
            input,
            prep,
            ngram,
            vectorizer,
            classifier,
            lambda,
            epochs,
            alpha,
        } => {
            session.apply_input(&input);
            session.apply_prep(&prep);
            session.resource_inputs();
            let c = &mut session.settings.classify;
            c.ngram = ngram.unwrap_or(c.ngram);
            c.vectorizer = vectorizer.unwrap_or(c.vectorizer);
            c.classifier = classifier.unwrap_or(c.classifier);
            c.lambda = lambda.unwrap_or(c.lambda);
            c.epochs = epochs.unwrap_or(c.epochs);
            c.alpha = alpha.unwrap_or(c.alpha);
            let corpus = session.corpus(&input.input)?;
            let model = pipeline::train_model(&corpus, &session.settings)?;
            out.write("model.json", &model.to_bytes()?)?;
            session.finish(out, "train", json!({}))
        }
        Command::Eval { model, input } => {
            session.apply_input(&input);
            let m = ModelFile::load(&model)?;
            session.inputs.push(model);
            let corpus = session.corpus(&input.input)?;
            let preds = pipeline::predict_corpus(&m, &corpus)?;
            let report = pipeline::evaluate_predictions(&preds)?;
            out.write("eval.csv", &export::eval_report(&report)?)?;
            out.write("confusion.csv", &export::confusion(&report)?)?;
            let rows: Vec<_> = preds
                .into_iter()
                .map(|p| (p.source_id, p.gold, p.predicted, p.score))
                .collect();
            out.write("predictions.csv", &export::predictions(&rows)?)?;
            eprintln!("accuracy {:.4} on {} tweets", report.accuracy, report.total());
            session.finish(out, "eval", json!({}))
        }
        Command::Grid { train, test, prep } => {
            session.apply_prep(&prep);
            session.resource_inputs();
            let train_c = session.corpus(&train)?;
            let test_c = session.corpus(&test)?;
            let cells = pipeline::grid(&train_c, &test_c, &session.settings)?;
            out.write("grid.csv", &export::grid_report(&cells)?)?;
            out.write("grid_measures.csv", &export::grid_measures(&cells)?)?;
            out.write("grid_confusion.csv", &export::grid_confusion(&cells)?)?;
            session.finish(out, "grid", json!({}))
        }
        Command::Explain {
            model,
            input,
            train,
            all,
            top,
        } => {
            session.apply_input(&input);
            let m = ModelFile::load(&model)?;
            session.inputs.push(model);
            let corpus = session.corpus(&input.input)?;
            let train_c = session.corpus(&train)?;
            let rows = pipeline::explain_corpus(&m, &corpus, &train_c, all, top)?;
            out.write("explain.csv", &export::explanations(&rows)?)?;
            session.finish(out, "explain", json!({ "all": all, "top": top }))
        }
        Command::Synth {
            spec,
            n,
            left_fraction,
            zero_party,
        } => {
            let spec = match &spec {
                Some(path) => {
                    let text = crate::resources::read_config_file(path)?;
                    session.inputs.push(path.clone());
                    toml::from_str::<SyntheticSpec>(&text)
                        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
                }
                None => {
                    let s = SyntheticSpec::standard(n, left_fraction, session.settings.seed());
                    if zero_party {
                        s.without_party_lexicons()
                    } else {
                        s
                    }
                }
            };
            let corpus = synth::generate_synthetic(&spec)?;
            let mut bytes = Vec::new();
            ingest::write_jsonl(&mut bytes, corpus.records())?;
            out.write("synthetic.jsonl", &bytes)?;
            session.finish(out, "synth", json!({ "spec": spec }))
        }
        Command::Chart { csv, kind, title, name } => {
            let bytes = std::fs::read(&csv).map_err(|e| Error::io(&csv, e))?;
            session.inputs.push(csv.clone());
            let (series, rows) = chart::rows_from_csv(&bytes)?;
            let svg = chart::render(&rows, kind, &title, &series)?;
            let name = name.unwrap_or_else(|| {
                let stem = csv.file_stem().and_then(|s| s.to_str()).unwrap_or("chart");
                format!("{stem}.svg")
            });
            out.write(&name, svg.as_bytes())?;
            session.finish(out, "chart", json!({ "kind": format!("{kind:?}"), "title": title }))
        }
    }
}
