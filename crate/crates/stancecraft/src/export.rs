//! CSV renderings of tables, records and reports. Every function returns
//! the file bytes: UTF-8, header row, LF line endings.

use std::fmt::Display;

use stancecraft_core::classify::{ClassifierKind, EvalReport, GridCell, NgramRange, VectorizerKind};
use stancecraft_core::corpus::{ClassDistribution, StanceLabel};
use stancecraft_core::ngram::DistinctKeyword;
use stancecraft_core::textprep::CleaningMode;
use stancecraft_core::windowed::{MaxTfidfRecord, TfidfDistinct};

use crate::error::{Error, Result};
use crate::ingest::{format_timestamp, Reject};

pub fn csv_bytes<R, F>(header: &[&str], rows: R) -> Result<Vec<u8>>
where
    R: IntoIterator<Item = Vec<F>>,
    F: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner()
        .map_err(|e| Error::Format(format!("CSV buffer: {}", e.error())))
}

/// Shortest representation that parses back to the same value.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    x.to_string()
}

pub fn counts<K: Display>(rows: &[(K, u64)]) -> Result<Vec<u8>> {
    csv_bytes(
        &["key", "count"],
        rows.iter().map(|(k, c)| vec![k.to_string(), c.to_string()]),
    )
}

pub fn comparison<K: Display>(rows: &[(K, u64, u64)]) -> Result<Vec<u8>> {
    csv_bytes(
        &["key", "count_left", "count_right"],
        rows.iter()
            .map(|(k, l, r)| vec![k.to_string(), l.to_string(), r.to_string()]),
    )
}

/// One row per (model, party) distinct keyword. Values are counts, or
/// summed scores for the score-margin TF-IDF rule.
#[derive(Debug, Clone, PartialEq)]
pub struct DistinctRow {
    pub model: &'static str,
    pub party: StanceLabel,
    pub key: String,
    pub own: f64,
    pub other: f64,
    pub difference: f64,
    pub ratio: f64,
}

impl DistinctRow {
    pub fn from_keyword<K: Display>(model: &'static str, party: StanceLabel, k: &DistinctKeyword<K>) -> Self {
        DistinctRow {
            model,
            party,
            key: k.key.to_string(),
            own: k.own_count as f64,
            other: k.other_count as f64,
            difference: k.difference as f64,
            ratio: k.ratio,
        }
    }

    pub fn from_tfidf(party: StanceLabel, d: &TfidfDistinct) -> Self {
        DistinctRow {
            model: "tfidf",
            party,
            key: d.word.clone(),
            own: d.own,
            other: d.other,
            difference: d.difference,
            ratio: if d.other == 0.0 { f64::INFINITY } else { d.own / d.other },
        }
    }
}

pub fn distinct(rows: &[DistinctRow]) -> Result<Vec<u8>> {
    csv_bytes(
        &[
            "model",
            "party",
            "key",
            "own_count",
            "other_count",
            "difference",
            "ratio",
        ],
        rows.iter().map(|r| {
            vec![
                r.model.to_string(),
                r.party.to_string(),
                r.key.clone(),
                num(r.own),
                num(r.other),
                num(r.difference),
                num(r.ratio),
            ]
        }),
    )
}

pub fn tfidf_records(records: &[MaxTfidfRecord]) -> Result<Vec<u8>> {
    csv_bytes(
        &["source_id", "timestamp", "word", "score", "window_index"],
        records.iter().map(|r| {
            vec![
                r.source_id.clone(),
                format_timestamp(r.timestamp),
                r.word.clone(),
                num(r.score),
                r.window_index.to_string(),
            ]
        }),
    )
}

pub fn top_repeated(rows: &[(String, u64, String)]) -> Result<Vec<u8>> {
    csv_bytes(
        &["word", "count", "category"],
        rows.iter()
            .map(|(w, c, cat)| vec![w.clone(), c.to_string(), cat.clone()]),
    )
}

pub fn class_distribution(d: &ClassDistribution) -> Result<Vec<u8>> {
    let mut rows: Vec<Vec<String>> = d
        .shares
        .iter()
        .map(|s| vec![s.label.to_string(), s.count.to_string(), format!("{:.1}", s.percent)])
        .collect();
    rows.push(vec![
        "total".into(),
        d.total.to_string(),
        if d.total > 0 { "100.0" } else { "0.0" }.into(),
    ]);
    csv_bytes(&["label", "count", "percent"], rows)
}

pub fn stage_counts(rows: &[(&str, usize)]) -> Result<Vec<u8>> {
    csv_bytes(
        &["stage", "records"],
        rows.iter().map(|(s, n)| vec![s.to_string(), n.to_string()]),
    )
}

pub fn rejects(rows: &[Reject]) -> Result<Vec<u8>> {
    csv_bytes(
        &["line", "id", "reason"],
        rows.iter()
            .map(|r| vec![r.line.to_string(), r.id.clone(), r.reason.clone()]),
    )
}

/// Long format: `accuracy` once, then precision/recall/f_measure/support
/// per class.
pub fn eval_report(r: &EvalReport) -> Result<Vec<u8>> {
    let mut rows = vec![vec!["accuracy".to_string(), "all".into(), num(r.accuracy)]];
    for c in &r.per_class {
        let label = c.label.to_string();
        rows.push(vec!["precision".into(), label.clone(), num(c.precision)]);
        rows.push(vec!["recall".into(), label.clone(), num(c.recall)]);
        rows.push(vec!["f_measure".into(), label.clone(), num(c.f_measure)]);
        rows.push(vec!["support".into(), label, c.support.to_string()]);
    }
    csv_bytes(&["metric", "class", "value"], rows)
}

fn confusion_rows(r: &EvalReport) -> Vec<[String; 3]> {
    StanceLabel::BOTH
        .iter()
        .map(|g| {
            let row = r.confusion[g.index()];
            [
                g.to_string(),
                row[StanceLabel::Left.index()].to_string(),
                row[StanceLabel::Right.index()].to_string(),
            ]
        })
        .collect()
}

pub fn confusion(r: &EvalReport) -> Result<Vec<u8>> {
    csv_bytes(
        &["gold", "predicted_+1", "predicted_-1"],
        confusion_rows(r).into_iter().map(Vec::from),
    )
}

pub fn predictions(rows: &[(String, StanceLabel, StanceLabel, f64)]) -> Result<Vec<u8>> {
    csv_bytes(
        &["source_id", "gold", "predicted", "score"],
        rows.iter()
            .map(|(id, g, p, s)| vec![id.clone(), g.to_string(), p.to_string(), num(*s)]),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExplainRow {
    pub source_id: String,
    pub gold: StanceLabel,
    pub predicted: StanceLabel,
    pub feature: String,
    pub count_left: u64,
    pub count_right: u64,
    pub contribution: f64,
}

pub fn explanations(rows: &[ExplainRow]) -> Result<Vec<u8>> {
    csv_bytes(
        &[
            "source_id",
            "gold",
            "predicted",
            "feature",
            "count_left",
            "count_right",
            "contribution",
        ],
        rows.iter().map(|r| {
            vec![
                r.source_id.clone(),
                r.gold.to_string(),
                r.predicted.to_string(),
                r.feature.clone(),
                r.count_left.to_string(),
                r.count_right.to_string(),
                num(r.contribution),
            ]
        }),
    )
}

fn range_name(r: NgramRange) -> &'static str {
    match r {
        NgramRange::Unigram => "bag-of-words",
        NgramRange::UniBigram => "bigram",
        NgramRange::Bigram => "bigram-only",
    }
}

fn classifier_row(c: ClassifierKind) -> &'static str {
    match c {
        ClassifierKind::Svm => "Accuracy - LinearSVC",
        ClassifierKind::Nb => "Accuracy - MultiNB",
    }
}

/// Column key of a cell: feature space, then cleaning mode.
fn column_of(c: &GridCell) -> (NgramRange, CleaningMode) {
    (c.ngram_range, c.cleaning)
}

/// One block per vectorizer: a `# of features` row and one accuracy row
/// per classifier; columns are feature space x cleaning mode.
pub fn grid_report(cells: &[GridCell]) -> Result<Vec<u8>> {
    let mut columns: Vec<_> = cells.iter().map(column_of).collect();
    columns.sort_by_key(|(r, m)| (range_order(*r), *m as u8));
    columns.dedup();
    let mut vectorizers: Vec<VectorizerKind> = Vec::new();
    let mut classifiers = Vec::new();
    for c in cells {
        if !vectorizers.contains(&c.vectorizer) {
            vectorizers.push(c.vectorizer);
        }
        if !classifiers.contains(&c.classifier) {
            classifiers.push(c.classifier);
        }
    }
    let header: Vec<String> = ["vectorizer".to_string(), "row".to_string()]
        .into_iter()
        .chain(
            columns
                .iter()
                .map(|(r, m)| format!("{} {}", range_name(*r), m.as_str())),
        )
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let find = |v, k, col| {
        cells
            .iter()
            .find(|c| c.vectorizer == v && c.classifier == k && column_of(c) == col)
    };
    let mut rows = Vec::new();
    for &v in &vectorizers {
        let mut features = vec![v.as_str().to_string(), "# of features".into()];
        for &col in &columns {
            let n = cells
                .iter()
                .find(|c| c.vectorizer == v && column_of(c) == col)
                .map(|c| c.n_features);
            features.push(n.map(|n| n.to_string()).unwrap_or_default());
        }
        rows.push(features);
        for &k in &classifiers {
            let mut row = vec![v.as_str().to_string(), classifier_row(k).to_string()];
            for &col in &columns {
                row.push(
                    find(v, k, col)
                        .map(|c| format!("{:.4}", c.report.accuracy))
                        .unwrap_or_default(),
                );
            }
            rows.push(row);
        }
    }
    csv_bytes(&header_refs, rows)
}

fn range_order(r: NgramRange) -> u8 {
    match r {
        NgramRange::Unigram => 0,
        NgramRange::UniBigram => 1,
        NgramRange::Bigram => 2,
    }
}

fn cell_key(c: &GridCell) -> [String; 4] {
    [
        c.vectorizer.as_str().into(),
        c.classifier.as_str().into(),
        c.ngram_range.as_str().into(),
        c.cleaning.as_str().into(),
    ]
}

/// Per-class precision, recall and F for every cell.
pub fn grid_measures(cells: &[GridCell]) -> Result<Vec<u8>> {
    let rows = cells.iter().flat_map(|c| {
        c.report.per_class.iter().map(move |m| {
            let mut row = cell_key(c).to_vec();
            row.extend([
                m.label.to_string(),
                num(m.precision),
                num(m.recall),
                num(m.f_measure),
                m.support.to_string(),
            ]);
            row
        })
    });
    csv_bytes(
        &[
            "vectorizer",
            "classifier",
            "ngram_range",
            "cleaning",
            "class",
            "precision",
            "recall",
            "f_measure",
            "support",
        ],
        rows,
    )
}

pub fn grid_confusion(cells: &[GridCell]) -> Result<Vec<u8>> {
    let rows = cells.iter().flat_map(|c| {
        confusion_rows(&c.report).into_iter().map(move |r| {
            let mut row = cell_key(c).to_vec();
            row.extend(r);
            row
        })
    });
    csv_bytes(
        &[
            "vectorizer",
            "classifier",
            "ngram_range",
            "cleaning",
            "gold",
            "predicted_+1",
            "predicted_-1",
        ],
        rows,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting_and_line_endings() {
        let bytes = counts(&[("a, b".to_string(), 2), ("say \"hi\"".to_string(), 1)]).unwrap();
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "key,count\n\"a, b\",2\n\"say \"\"hi\"\"\",1\n"
        );
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 12345.678] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(f64::INFINITY), "inf");
    }

    #[test]
    fn distribution_table() {
        let d = ClassDistribution::from_counts(8979, 7269);
        let text = String::from_utf8(class_distribution(&d).unwrap()).unwrap();
        assert_eq!(
            text,
            "label,count,percent\n+1,8979,55.3\n-1,7269,44.7\ntotal,16248,100.0\n"
        );
    }
}
