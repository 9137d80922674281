//! Per-feature decomposition of a linear decision.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::model::TrainedModel;
use super::vectorize::SparseVector;
use super::vocab::Vocabulary;
use crate::corpus::StanceLabel;
use crate::ngram::FrequencyTable;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplanationRow {
    pub feature: String,
    pub column: usize,
    pub value: f64,
    pub count_left: u64,
    pub count_right: u64,
    /// Signed push towards left (positive) or right (negative).
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Explanation {
    pub predicted: StanceLabel,
    /// Decision score; equals `base + Σ contribution`.
    pub score: f64,
    /// Bias (SVM) or log prior odds (NB).
    pub base: f64,
    /// Sorted by |contribution| descending, then column.
    pub rows: Vec<ExplanationRow>,
}

/// Breaks the decision on `x` into one row per active feature, annotated
/// with how often each party used the feature in training.
pub fn explain_misclassification(
    model: &TrainedModel,
    vocab: &Vocabulary,
    x: &SparseVector,
    left_stats: &FrequencyTable,
    right_stats: &FrequencyTable,
) -> Result<Explanation> {
    x.check_dimension(model.dimension())?;
    let (weights, base) = model.linear_form();
    let mut rows: Vec<ExplanationRow> = x
        .iter()
        .map(|(column, value)| {
            let feature: String = vocab.feature(column).unwrap_or_default().into();
            ExplanationRow {
                count_left: left_stats.get(&feature),
                count_right: right_stats.get(&feature),
                feature,
                column,
                value,
                contribution: value * weights[column],
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        libm::fabs(b.contribution)
            .total_cmp(&libm::fabs(a.contribution))
            .then(a.column.cmp(&b.column))
    });
    let score = base + x.dot(&weights);
    Ok(Explanation {
        predicted: StanceLabel::from_score(score),
        score,
        base,
        rows,
    })
}
