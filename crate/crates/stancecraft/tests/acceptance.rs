//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stancecraft::config::Settings;
use stancecraft::ingest::{self, DateRange, InputFormat};
use stancecraft::pipeline;
use stancecraft::synth::{generate_synthetic, SyntheticSpec};
use stancecraft_core::classify::{
    build_vocab, explain_misclassification, f_measure, features, objective, predict_nb, predict_svm, tfidf_vectorize,
    train_nb, train_svm, ClassifierKind, ClassifierSpec, NgramRange, SparseVector, SvmConfig, TextClassifier,
    TrainedModel, VectorizerKind,
};
use stancecraft_core::corpus::{
    assign_label, split, ClassDistribution, Corpus, PartyCode, SplitSpec, StanceLabel, Timestamp, TweetRecord,
};
use stancecraft_core::ngram::{bigram_counts, bigram_prob, distinct_keywords, FrequencyTable};
use stancecraft_core::textprep::{stem, TokenizedDoc};
use stancecraft_core::windowed::{chronological_pass, idf_from_df, TfidfConfig, WindowMode};

use StanceLabel::{Left, Right};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words(rng: &mut ChaCha8Rng, vocab: usize, max_len: usize, min_len: usize) -> Vec<String> {
    let n = rng.gen_range(min_len..=max_len);
    (0..n).map(|_| format!("w{}", rng.gen_range(0..vocab))).collect()
}

fn docs(raw: Vec<Vec<String>>, label: StanceLabel, prefix: &str) -> Vec<TokenizedDoc> {
    raw.into_iter()
        .enumerate()
        .map(|(i, tokens)| TokenizedDoc {
            source_id: format!("{prefix}{i}"),
            label,
            timestamp: Timestamp(i as i64),
            tokens,
        })
        .collect()
}

fn c01_stems() -> Outcome {
    let cases = [
        ("distancing", "distanc"),
        ("provide", "provid"),
        ("briefing", "brief"),
        ("business", "busi"),
        ("update", "updat"),
    ];
    for (w, want) in cases {
        let got = stem(w);
        check(got == want, || format!("stem({w}) = {got}, want {want}"))?;
    }
    Ok(format!("{} fixtures", cases.len()))
}

fn c02_labels() -> Outcome {
    check(assign_label(PartyCode::Democrat) == Left && Left.value() == 1, || {
        "D".into()
    })?;
    check(assign_label(PartyCode::NewProgressive) == Left, || "NPP".into())?;
    check(
        assign_label(PartyCode::Republican) == Right && Right.value() == -1,
        || "R".into(),
    )?;
    let d = ClassDistribution::from_counts(8979, 7269);
    let l = d.get(Left).unwrap().percent;
    let r = d.get(Right).unwrap().percent;
    check(l == 55.3 && r == 44.7, || format!("got ({l}, {r})"))?;
    Ok(format!("D,NPP→+1 R→-1; 8979/7269 → {l}% / {r}%"))
}

fn tiny_corpus(n: usize) -> Corpus {
    let records = (0..n)
        .map(|i| TweetRecord {
            id: i.to_string(),
            timestamp: Timestamp(i as i64),
            username: String::new(),
            party: if i % 2 == 0 {
                PartyCode::Democrat
            } else {
                PartyCode::Republican
            },
            state: String::new(),
            text: String::new(),
        })
        .collect();
    Corpus::new(records, "acceptance").unwrap()
}

fn c03_split() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // log-uniform, so small n (where the floors bite) are well covered
    let mut ns: Vec<usize> = (0..198)
        .map(|_| libm::exp(rng.gen_range(3f64.ln()..100_000f64.ln())) as usize)
        .collect();
    ns.extend([3, 100_000]);
    for n in ns {
        let seed = rng.gen::<u64>();
        let corpus = tiny_corpus(n);
        let spec = SplitSpec::with_seed(seed);
        let s = split(&corpus, &spec).map_err(|e| e.to_string())?;
        let tenth = n / 10;
        let sizes = (s.dev.len(), s.train.len(), s.test.len());
        check(sizes == (tenth, n - 2 * tenth, tenth), || {
            format!("n={n}: sizes {sizes:?}")
        })?;
        let mut seen = vec![false; n];
        for part in [&s.dev, &s.train, &s.test] {
            for id in part.ids() {
                let i: usize = id.parse().unwrap();
                check(!seen[i], || format!("n={n}: id {i} in two parts"))?;
                seen[i] = true;
            }
        }
        check(seen.iter().all(|&b| b), || format!("n={n}: not exhaustive"))?;
        check(split(&corpus, &spec).unwrap() == s, || format!("n={n}: rerun differs"))?;
    }
    Ok("200 log-uniform n in [3, 100000]".into())
}

fn table(rng: &mut ChaCha8Rng) -> FrequencyTable {
    let mut t = FrequencyTable::new(None);
    for k in 0..rng.gen_range(0..12) {
        t.add(format!("k{k}"), rng.gen_range(0..8));
    }
    t
}

fn c04_distinct() -> Outcome {
    let own = FrequencyTable::from_counts(Some(Left), [("mask".to_string(), 456)]);
    let other = FrequencyTable::from_counts(Some(Right), [("mask".to_string(), 174)]);
    let d = distinct_keywords(&own, &other, 2.0, 0).map_err(|e| e.to_string())?;
    check(d.len() == 1 && d[0].difference == 282, || format!("got {d:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut equal_seen = 0;
    for _ in 0..1000 {
        let a = table(&mut rng);
        let b = table(&mut rng);
        let thr = rng.gen_range(1.01..6.0);
        let da: BTreeSet<String> = distinct_keywords(&a, &b, thr, 0)
            .unwrap()
            .into_iter()
            .map(|k| k.key)
            .collect();
        let db: BTreeSet<String> = distinct_keywords(&b, &a, thr, 0)
            .unwrap()
            .into_iter()
            .map(|k| k.key)
            .collect();
        check(da.is_disjoint(&db), || {
            format!("distinct for both parties: {:?}", da.intersection(&db))
        })?;
        for (k, c) in a.iter() {
            if c > 0 && b.get(k) == c {
                equal_seen += 1;
                check(!da.contains(k), || format!("equal counts accepted for {k}"))?;
            }
        }
    }
    Ok(format!(
        "difference 282; 1000 tables antisymmetric, {equal_seen} equal-count keys rejected"
    ))
}

fn c05_bigram() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut contexts = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..6);
        let raw = (0..n).map(|_| words(&mut rng, 6, 8, 0)).collect();
        let t = bigram_counts(&docs(raw, Left, "d")).map_err(|e| e.to_string())?;
        let vocab: BTreeSet<String> = t.pairs.iter().flat_map(|(b, _)| [b.0.clone(), b.1.clone()]).collect();
        for prev in t.unigram_counts.keys() {
            let sum: f64 = vocab.iter().map(|next| bigram_prob(&t, prev, next).unwrap()).sum();
            check((sum - 1.0).abs() <= 1e-12, || format!("context {prev}: sum {sum}"))?;
            contexts += 1;
        }
    }
    Ok(format!("500 tables, {contexts} contexts"))
}

fn oracle_best(doc: &[String], window: &[TokenizedDoc]) -> (String, f64) {
    let n = window.len();
    let mut best = (String::new(), f64::NEG_INFINITY);
    for w in doc {
        let count = doc.iter().filter(|t| *t == w).count();
        let df = window.iter().filter(|d| d.tokens.contains(w)).count();
        let idf = libm::log((1 + n) as f64 / (1 + df) as f64) + 1.0;
        let s = count as f64 / doc.len() as f64 * idf;
        if s > best.1 {
            best = (w.clone(), s);
        }
    }
    best
}

fn c06_windowed() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = TfidfConfig {
        window: WindowMode::Sized(10),
        ..TfidfConfig::default()
    };
    let mut records = 0;
    for _ in 0..50 {
        let na = rng.gen_range(1..=30);
        let nb = rng.gen_range(1..=30);
        let a = docs((0..na).map(|_| words(&mut rng, 10, 12, 1)).collect(), Left, "a");
        let b = docs((0..nb).map(|_| words(&mut rng, 10, 12, 1)).collect(), Right, "b");
        let got = chronological_pass(&a, &b, &cfg).map_err(|e| e.to_string())?;
        let blocks: Vec<&[TokenizedDoc]> = b.chunks(10).collect();
        for (i, (d, r)) in a.iter().zip(&got).enumerate() {
            let k = (i / 10).min(blocks.len() - 1);
            let (word, score) = oracle_best(&d.tokens, blocks[k]);
            check(r.word == word && r.score == score && r.window_index == k, || {
                format!(
                    "tweet {i}: got ({}, {}, {}), oracle ({word}, {score}, {k})",
                    r.word, r.score, r.window_index
                )
            })?;
            records += 1;
        }
    }
    Ok(format!("50 corpora, {records} records exact"))
}

/// Bayes rule in probability space, straight from the counts.
fn bayes_oracle(x: &[Vec<u32>], y: &[StanceLabel], probe: &[u32], alpha: f64) -> [f64; 2] {
    let v = probe.len();
    let mut joint = [0.0; 2];
    for (c, label) in [Left, Right].into_iter().enumerate() {
        let rows: Vec<&Vec<u32>> = x.iter().zip(y).filter(|(_, l)| **l == label).map(|(r, _)| r).collect();
        let total: u32 = rows.iter().map(|r| r.iter().sum::<u32>()).sum();
        let mut p = rows.len() as f64 / x.len() as f64;
        for j in 0..v {
            let cj: u32 = rows.iter().map(|r| r[j]).sum();
            let theta = (alpha + cj as f64) / (alpha * v as f64 + total as f64);
            for _ in 0..probe[j] {
                p *= theta;
            }
        }
        joint[c] = p;
    }
    let z = joint[0] + joint[1];
    [(joint[0] / z).ln(), (joint[1] / z).ln()]
}

fn dense(row: &[u32]) -> SparseVector {
    SparseVector::from_dense(&row.iter().map(|&c| c as f64).collect::<Vec<_>>())
}

fn c07_nb() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut probes = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let v = rng.gen_range(1..=15);
        let n = rng.gen_range(2..=20);
        let x: Vec<Vec<u32>> = (0..n).map(|_| (0..v).map(|_| rng.gen_range(0..4)).collect()).collect();
        let mut y: Vec<StanceLabel> = (0..n).map(|_| if rng.gen() { Left } else { Right }).collect();
        y[0] = Left;
        y[1] = Right;
        let matrix: Vec<SparseVector> = x.iter().map(|r| dense(r)).collect();
        let model = train_nb(&matrix, &y, 1.0).map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let probe: Vec<u32> = (0..v).map(|_| rng.gen_range(0..3)).collect();
            let want = bayes_oracle(&x, &y, &probe, 1.0);
            let got = predict_nb(&model, &dense(&probe)).unwrap();
            for (g, w) in got.log_posteriors.iter().zip(want) {
                let err = (g - w).abs();
                worst = worst.max(err);
                check(err <= 1e-10, || format!("log posterior off by {err}"))?;
            }
            let oracle_label = if want[0] >= want[1] { Left } else { Right };
            if (want[0] - want[1]).abs() > 1e-9 {
                check(got.label == oracle_label, || {
                    format!("argmax {:?} vs oracle {:?}", got.label, oracle_label)
                })?;
            }
            probes += 1;
        }
    }
    Ok(format!(
        "100 corpora, {probes} probes, max |Δlog posterior| {worst:.1e}"
    ))
}

/// Two clusters around (2, 1) and (-2, -1), separable by the line a = 0.
fn clusters(seed: u64, n: usize) -> (Vec<SparseVector>, Vec<StanceLabel>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let (label, c) = if i % 2 == 0 { (Left, 1.0) } else { (Right, -1.0) };
            let (dx, dy): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            (SparseVector::from_dense(&[2.0 * c + dx, c + dy]), label)
        })
        .unzip()
}

fn c08_svm() -> Outcome {
    for seed in 0..20 {
        let (xs, ys) = clusters(seed, 40);
        let cfg = SvmConfig {
            seed,
            ..SvmConfig::default()
        };
        let model = train_svm(&xs, &ys, &cfg).map_err(|e| e.to_string())?;
        let correct = xs
            .iter()
            .zip(&ys)
            .filter(|(x, y)| predict_svm(&model, x).unwrap().0 == **y)
            .count();
        check(correct == 40, || format!("seed {seed}: training accuracy {correct}/40"))?;
        let initial = objective(&[0.0, 0.0], 0.0, cfg.lambda, &xs, &ys);
        let fin = objective(&model.weights, model.bias, cfg.lambda, &xs, &ys);
        check(fin < initial, || format!("seed {seed}: objective {fin} ≥ {initial}"))?;
        let xs2: Vec<_> = xs.iter().flat_map(|x| [x.clone(), x.clone()]).collect();
        let ys2: Vec<_> = ys.iter().flat_map(|y| [*y, *y]).collect();
        let model2 = train_svm(&xs2, &ys2, &cfg).unwrap();
        let (probe, _) = clusters(1000 + seed, 200);
        for p in &probe {
            check(
                predict_svm(&model, p).unwrap().0 == predict_svm(&model2, p).unwrap().0,
                || format!("seed {seed}: duplication changed a probe prediction"),
            )?;
        }
    }
    Ok("20 datasets: accuracy 1.0, objective decreased, 200 probes unchanged under duplication".into())
}

fn c09_metrics() -> Outcome {
    let f1 = f_measure(0.905, 0.895);
    let f2 = f_measure(0.923, 0.937);
    check((f1 - 0.900).abs() <= 0.001, || format!("F(0.905, 0.895) = {f1}"))?;
    check((f2 - 0.930).abs() <= 0.001, || format!("F(0.923, 0.937) = {f2}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let p: f64 = rng.gen_range(0.0..=1.0);
        let r: f64 = rng.gen_range(0.0..=1.0);
        let want = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
        let got = f_measure(p, r);
        check((got - want).abs() <= 1e-12, || {
            format!("F({p}, {r}) = {got}, want {want}")
        })?;
    }
    Ok(format!("F = {f1:.4}, {f2:.4}; 1000 random pairs"))
}

fn synthetic_accuracy(spec: &SyntheticSpec, seed: u64) -> Result<f64, String> {
    let corpus = generate_synthetic(spec).map_err(|e| e.to_string())?;
    let mut bytes = Vec::new();
    ingest::write_jsonl(&mut bytes, corpus.records()).map_err(|e| e.to_string())?;
    let report = ingest::ingest(&bytes[..], InputFormat::Jsonl, "synthetic", &DateRange::default())
        .map_err(|e| e.to_string())?;
    let settings = Settings {
        seed: Some(seed),
        ..Settings::default()
    };
    let eval = pipeline::holdout_eval(&report.corpus, &settings).map_err(|e| e.to_string())?;
    Ok(eval.accuracy)
}

fn c10_synthetic() -> Outcome {
    let seeds = 0..5u64;
    let mut with = Vec::new();
    let mut without = Vec::new();
    for seed in seeds {
        let spec = SyntheticSpec::standard(2000, 0.553, seed);
        with.push(synthetic_accuracy(&spec, seed)?);
        without.push(synthetic_accuracy(&spec.without_party_lexicons(), seed)?);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (a, b) = (mean(&with), mean(&without));
    check(a >= 0.95, || format!("mean accuracy {a:.4} < 0.95 ({with:?})"))?;
    check(b <= 0.60, || {
        format!("zeroed-lexicon accuracy {b:.4} > 0.60 ({without:?})")
    })?;
    Ok(format!("mean accuracy {a:.4}; zeroed lexicons {b:.4}"))
}

fn c11_tfidf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut vectors = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..15);
        let raw = (0..n).map(|_| words(&mut rng, 12, 10, 0)).collect::<Vec<_>>();
        if raw.iter().all(|d| d.is_empty()) {
            continue;
        }
        let d = docs(raw, Left, "d");
        let vocab = build_vocab(&d, NgramRange::UniBigram, "train").map_err(|e| e.to_string())?;
        let (m, _) = tfidf_vectorize(&d, &vocab).map_err(|e| e.to_string())?;
        for v in m.iter().filter(|v| !v.is_zero()) {
            let norm = v.iter().map(|(_, x)| x * x).sum::<f64>().sqrt();
            check((norm - 1.0).abs() <= 1e-9, || format!("norm {norm}"))?;
            vectors += 1;
        }
    }
    for n in 1..=20 {
        for df in 1..=n {
            check(idf_from_df(df, n) < idf_from_df(df - 1, n), || {
                format!("idf not decreasing at N={n}, df={df}")
            })?;
        }
    }
    Ok(format!(
        "{vectors} vectors unit-norm; idf strictly decreasing in df for N ≤ 20"
    ))
}

fn c12_explain() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..50 {
        let n = rng.gen_range(4..12);
        let mut train = Vec::new();
        for i in 0..n {
            let label = if i % 2 == 0 { Left } else { Right };
            train.push(TokenizedDoc::new(format!("t{i}"), label, words(&mut rng, 10, 8, 1)));
        }
        let kind = *[ClassifierKind::Svm, ClassifierKind::Nb].choose(&mut rng).unwrap();
        let vec_kind = *[VectorizerKind::Count, VectorizerKind::Tfidf].choose(&mut rng).unwrap();
        let range = *[NgramRange::Unigram, NgramRange::UniBigram].choose(&mut rng).unwrap();
        let mut spec = ClassifierSpec::new(range, vec_kind, kind);
        spec.svm.seed = case;
        let clf = TextClassifier::train(&train, &spec).map_err(|e| e.to_string())?;
        let mut stats = [FrequencyTable::new(Some(Left)), FrequencyTable::new(Some(Right))];
        for d in &train {
            for f in features(&d.tokens, range) {
                stats[d.label.index()].add(f, 1);
            }
        }
        let probe = words(&mut rng, 12, 8, 1);
        let x = clf.vectorize(&probe).unwrap();
        let e =
            explain_misclassification(&clf.model, &clf.vocab, &x, &stats[0], &stats[1]).map_err(|e| e.to_string())?;
        let (_, score) = clf.model.predict(&x).unwrap();
        let sum = e.base + e.rows.iter().map(|r| r.contribution).sum::<f64>();
        check((sum - score).abs() <= 1e-9, || {
            format!("case {case}: Σ = {sum}, score = {score}")
        })?;
        let brute: Vec<(usize, f64)> = (0..clf.vocab.len())
            .filter(|&j| x.get(j) != 0.0)
            .map(|j| {
                let w = match &clf.model {
                    TrainedModel::Svm(m) => m.weights[j],
                    TrainedModel::Nb(m) => m.feature_log_likelihoods[0][j] - m.feature_log_likelihoods[1][j],
                };
                (j, x.get(j) * w)
            })
            .collect();
        check(e.rows.len() == brute.len(), || {
            format!("case {case}: {} rows for {} features", e.rows.len(), brute.len())
        })?;
        if let Some(first) = brute.first() {
            let top = brute
                .iter()
                .fold(*first, |best, &r| if r.1.abs() > best.1.abs() { r } else { best });
            let row = &e.rows[0];
            check(row.column == top.0 && (row.contribution - top.1).abs() <= 1e-12, || {
                format!("case {case}: top row {} vs brute force {}", row.column, top.0)
            })?;
            let f = clf.vocab.feature(top.0).unwrap().to_string();
            check(
                row.count_left == stats[0].get(&f) && row.count_right == stats[1].get(&f),
                || format!("case {case}: counts for {f}"),
            )?;
        }
    }
    Ok("50 models: contributions sum to the score, top rows match".into())
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_stancecraft"))
        .args(args)
        .current_dir(dir)
        .env_remove("STANCECRAFT_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(())
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, into: &mut BTreeMap<String, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, into);
            } else {
                let rel = path.strip_prefix(root).unwrap().display().to_string();
                into.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    let mut files = BTreeMap::new();
    walk(dir, dir, &mut files);
    files
}

const PIPELINES: [&[&[&str]]; 3] = [
    &[
        &["synth", "--n", "600", "--seed", "5", "-o", "s"],
        &["ingest", "s/synthetic.jsonl", "-o", "i"],
        &["filter", "i/corpus.jsonl", "--terms-default", "-o", "f"],
        &["split", "i/corpus.jsonl", "--seed", "5", "-o", "sp"],
        &["train", "sp/train.jsonl", "--seed", "5", "-o", "t"],
        &["eval", "t/model.json", "sp/test.jsonl", "-o", "e"],
    ],
    &[
        &["synth", "--n", "400", "--seed", "8", "-o", "s"],
        &["profile", "bow", "s/synthetic.jsonl", "-o", "pb"],
        &["profile", "bigram", "s/synthetic.jsonl", "-o", "pg"],
        &["profile", "tfidf", "s/synthetic.jsonl", "--window", "25", "-o", "pt"],
        &["distinct", "s/synthetic.jsonl", "-o", "d"],
        &["chart", "pb/bow_matched.csv", "--title", "shared", "-o", "c"],
    ],
    &[
        &[
            "synth",
            "--n",
            "500",
            "--seed",
            "2",
            "--left-fraction",
            "0.5",
            "-o",
            "s",
        ],
        &["split", "s/synthetic.jsonl", "--seed", "2", "-o", "sp"],
        &["grid", "sp/train.jsonl", "sp/test.jsonl", "--seed", "2", "-o", "g"],
        &["train", "sp/train.jsonl", "--classifier", "nb", "-o", "t"],
        &[
            "explain",
            "t/model.json",
            "sp/test.jsonl",
            "--train",
            "sp/train.jsonl",
            "--all",
            "-o",
            "x",
        ],
    ],
];

fn c13_reproducible() -> Outcome {
    let mut files = 0;
    for (p, steps) in PIPELINES.iter().enumerate() {
        let runs: Vec<tempfile::TempDir> = (0..2).map(|_| tempfile::tempdir().unwrap()).collect();
        for run in &runs {
            for step in *steps {
                run_cli(run.path(), step)?;
            }
        }
        let a = snapshot(runs[0].path());
        let b = snapshot(runs[1].path());
        check(a.keys().eq(b.keys()), || {
            format!("pipeline {}: file sets differ", p + 1)
        })?;
        for (name, bytes) in &a {
            check(b[name] == *bytes, || format!("pipeline {}: {name} differs", p + 1))?;
        }
        check(p != 1 || a.keys().any(|k| k.ends_with(".svg")), || {
            format!("pipeline {}: no SVG output", p + 1)
        })?;
        files += a.len();
    }
    Ok(format!("3 pipelines, {files} files byte-identical across reruns"))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 13] = [
        ("stemmer fixtures", c01_stems, secs(1)),
        ("label and distribution consistency", c02_labels, secs(1)),
        ("split law", c03_split, secs(5)),
        ("distinct-keyword fixture and antisymmetry", c04_distinct, secs(5)),
        ("bigram conditional normalization", c05_bigram, secs(5)),
        ("windowed TF-IDF oracle", c06_windowed, secs(10)),
        ("naive Bayes oracle", c07_nb, secs(10)),
        ("SVM properties", c08_svm, secs(10)),
        ("F-measure consistency", c09_metrics, secs(1)),
        ("synthetic end-to-end accuracy", c10_synthetic, secs(60)),
        ("TF-IDF vectorizer norms and idf monotonicity", c11_tfidf, secs(5)),
        ("explanation linearity", c12_explain, secs(5)),
        ("CLI reproducibility", c13_reproducible, secs(30)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *budget => Err(format!("{detail}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} ({took:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
