use proptest::prelude::*;
use stancecraft_core::corpus::{StanceLabel, Timestamp};
use stancecraft_core::textprep::TokenizedDoc;
use stancecraft_core::windowed::{
    chronological_pass, idf, idf_from_df, max_tfidf_word, tf, tfidf_distinct, top_repeated, MaxTfidfRecord,
    TfidfConfig, TfidfDistinctRule, WindowMode,
};

fn docs(raw: &[Vec<String>], label: StanceLabel, prefix: &str) -> Vec<TokenizedDoc> {
    raw.iter()
        .enumerate()
        .map(|(i, t)| TokenizedDoc {
            source_id: format!("{prefix}{i}"),
            label,
            timestamp: Timestamp(i as i64),
            tokens: t.clone(),
        })
        .collect()
}

fn strs(words: &[&str]) -> Vec<String> {
    words.iter().map(|s| s.to_string()).collect()
}

/// Exhaustive score table: every token position, no shared index.
fn oracle_scores(doc: &[String], window: &[TokenizedDoc]) -> Vec<(String, f64)> {
    let n = window.len();
    doc.iter()
        .map(|w| {
            let count = doc.iter().filter(|t| *t == w).count();
            let df = window.iter().filter(|d| d.tokens.contains(w)).count();
            let idf = libm::log((1 + n) as f64 / (1 + df) as f64) + 1.0;
            (w.clone(), count as f64 / doc.len() as f64 * idf)
        })
        .collect()
}

fn oracle_best(doc: &[String], window: &[TokenizedDoc]) -> (String, f64) {
    let mut best = (String::new(), f64::NEG_INFINITY);
    for (w, s) in oracle_scores(doc, window) {
        if s > best.1 {
            best = (w, s);
        }
    }
    best
}

fn oracle_pass(a: &[TokenizedDoc], b: &[TokenizedDoc], w: usize) -> Vec<(String, f64, usize)> {
    let blocks: Vec<&[TokenizedDoc]> = b.chunks(w).collect();
    a.iter()
        .enumerate()
        .map(|(i, d)| {
            let k = (i / w).min(blocks.len() - 1);
            let (word, s) = oracle_best(&d.tokens, blocks[k]);
            (word, s, k)
        })
        .collect()
}

#[test]
fn idf_values() {
    assert_eq!(idf_from_df(10, 10), 1.0);
    assert!((idf_from_df(0, 10) - 3.3979).abs() < 1e-4);
    assert!((idf_from_df(4, 10) - 1.7885).abs() < 1e-4);
    for df in 0..10 {
        assert!(idf_from_df(df, 10) >= idf_from_df(df + 1, 10));
    }
    let window = docs(&[strs(&["a"]), strs(&["b"])], StanceLabel::Right, "b");
    assert_eq!(idf("a", &window).unwrap(), idf_from_df(1, 2));
    assert!(idf("a", &[]).is_err());
}

#[test]
fn tf_fixture() {
    let d = docs(&[strs(&["mask", "mask", "up", "stay", "mask"])], StanceLabel::Left, "a");
    assert_eq!(tf("mask", &d[0]).unwrap(), 3.0 / 5.0);
    assert_eq!(tf("home", &d[0]).unwrap(), 0.0);
    assert!(tf("x", &docs(&[vec![]], StanceLabel::Left, "e")[0]).is_err());
}

#[test]
fn twelve_token_doc_matches_exhaustive_table() {
    let doc = strs(&[
        "covid", "mask", "stay", "home", "mask", "vaccine", "covid", "test", "stay", "mask", "relief", "please",
    ]);
    let window = docs(
        &[
            strs(&["covid", "relief"]),
            strs(&["covid", "test"]),
            strs(&["mask", "covid"]),
            strs(&["stay", "home"]),
            strs(&["vaccine", "covid"]),
            strs(&["covid"]),
            strs(&["test", "test"]),
            strs(&["mask"]),
            strs(&["relief", "covid"]),
            strs(&["home"]),
        ],
        StanceLabel::Right,
        "b",
    );
    let a = docs(std::slice::from_ref(&doc), StanceLabel::Left, "a");
    let rec = max_tfidf_word(&a[0], &window, 0).unwrap();
    let (word, score) = oracle_best(&doc, &window);
    assert_eq!((rec.word.as_str(), rec.score), (word.as_str(), score));
    // mask: tf 3/12, df 2 -> 0.25 * (ln(11/3) + 1)
    assert_eq!(word, "mask");
    assert!((score - 0.25 * ((11.0f64 / 3.0).ln() + 1.0)).abs() < 1e-12);
}

#[test]
fn twenty_five_by_twenty_five_blocks() {
    let raw: Vec<Vec<String>> = (0..25).map(|i| vec![format!("w{}", i % 4)]).collect();
    let a = docs(&raw, StanceLabel::Left, "a");
    let b = docs(&raw, StanceLabel::Right, "b");
    let recs = chronological_pass(&a, &b, &TfidfConfig::default()).unwrap();
    let blocks: Vec<usize> = recs.iter().map(|r| r.window_index).collect();
    let oracle: Vec<usize> = (0..25).map(|i| i / 10).collect();
    assert_eq!(blocks, oracle);
    assert_eq!(b.chunks(10).last().unwrap().len(), 5);
    let short = chronological_pass(&a[..10], &b[..3], &TfidfConfig::default()).unwrap();
    assert!(short.iter().all(|r| r.window_index == 0));
}

#[test]
fn unsorted_and_empty_inputs_rejected() {
    let mut a = docs(&[strs(&["x"]), strs(&["y"])], StanceLabel::Left, "a");
    let b = docs(&[strs(&["x"])], StanceLabel::Right, "b");
    assert!(chronological_pass(&a, &[], &TfidfConfig::default()).is_err());
    a.swap(0, 1);
    assert!(chronological_pass(&a, &b, &TfidfConfig::default()).is_err());
    assert!(TfidfConfig::with_window(0).is_err());
}

fn record(word: &str) -> MaxTfidfRecord {
    MaxTfidfRecord {
        source_id: "s".into(),
        timestamp: Timestamp(0),
        word: word.into(),
        score: 1.0,
        window_index: 0,
    }
}

#[test]
fn repetition_ranking_fixtures() {
    let mut left: Vec<_> = (0..38).map(|_| record("covid")).collect();
    left.extend((0..20).map(|_| record("mask")));
    let mut right: Vec<_> = (0..48).map(|_| record("covid19")).collect();
    right.extend((0..18).map(|_| record("mask")));
    assert_eq!(top_repeated(&left, 1), [("covid".to_string(), 38)]);
    assert_eq!(top_repeated(&right, 1), [("covid19".to_string(), 48)]);
    let singles = [record("b"), record("a"), record("c")];
    assert_eq!(
        top_repeated(&singles, 5).into_iter().map(|x| x.0).collect::<Vec<_>>(),
        ["a", "b", "c"]
    );
    let d = tfidf_distinct(&left, &right, TfidfDistinctRule::default());
    let words: Vec<_> = d.iter().map(|x| x.word.as_str()).collect();
    assert_eq!(words, ["covid"]);
}

fn corpus_strategy() -> impl Strategy<Value = Vec<Vec<String>>> {
    let word = prop::sample::select(vec!["covid", "mask", "stay", "home", "test", "relief", "vaccine"]);
    prop::collection::vec(prop::collection::vec(word.prop_map(String::from), 1..9), 1..35)
}

proptest! {
    #[test]
    fn pass_matches_brute_force(a in corpus_strategy(), b in corpus_strategy(), w in 1usize..12, all in any::<bool>()) {
        let (da, db) = (docs(&a, StanceLabel::Left, "a"), docs(&b, StanceLabel::Right, "b"));
        let cfg = TfidfConfig { window: if all { WindowMode::All } else { WindowMode::Sized(w) }, ..TfidfConfig::default() };
        let recs = chronological_pass(&da, &db, &cfg).unwrap();
        let oracle = oracle_pass(&da, &db, if all { db.len() } else { w });
        prop_assert_eq!(recs.len(), da.len());
        for ((r, d), (word, score, k)) in recs.iter().zip(&da).zip(oracle) {
            prop_assert_eq!(&r.word, &word);
            prop_assert_eq!(r.score, score);
            prop_assert_eq!(r.window_index, k);
            prop_assert!(d.tokens.contains(&r.word));
        }
        prop_assert_eq!(chronological_pass(&da, &db, &cfg).unwrap(), recs);
    }

    #[test]
    fn duplication_keeps_argmax(a in corpus_strategy(), b in corpus_strategy()) {
        let db = docs(&b, StanceLabel::Right, "b");
        for tokens in a {
            let doubled: Vec<String> = tokens.iter().flat_map(|t| [t.clone(), t.clone()]).collect();
            let one = max_tfidf_word(&docs(&[tokens], StanceLabel::Left, "a")[0], &db, 0).unwrap();
            let two = max_tfidf_word(&docs(&[doubled], StanceLabel::Left, "a")[0], &db, 0).unwrap();
            prop_assert_eq!(one.word, two.word);
        }
    }
}
