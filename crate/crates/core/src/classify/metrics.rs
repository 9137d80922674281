use serde::{Deserialize, Serialize};

use crate::corpus::StanceLabel;
use crate::{Error, Result};

/// Harmonic mean of precision and recall; 0 when both are 0.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub label: StanceLabel,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// Gold examples of this class.
    pub support: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub accuracy: f64,
    /// Left first, then right.
    pub per_class: [ClassMetrics; 2],
    /// `confusion[gold][predicted]`, indexed by [`StanceLabel::index`].
    pub confusion: [[u64; 2]; 2],
}

impl EvalReport {
    pub fn class(&self, label: StanceLabel) -> &ClassMetrics {
        &self.per_class[label.index()]
    }

    pub fn total(&self) -> u64 {
        self.confusion.iter().flatten().sum()
    }
}

pub fn evaluate(predictions: &[StanceLabel], gold: &[StanceLabel]) -> Result<EvalReport> {
    if predictions.len() != gold.len() {
        return Err(Error::LengthMismatch(predictions.len(), gold.len()));
    }
    if gold.is_empty() {
        return Err(Error::Input("nothing to evaluate".into()));
    }
    let mut confusion = [[0u64; 2]; 2];
    for (p, g) in predictions.iter().zip(gold) {
        confusion[g.index()][p.index()] += 1;
    }
    let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let per_class = StanceLabel::BOTH.map(|label| {
        let c = label.index();
        let tp = confusion[c][c];
        let predicted = confusion[0][c] + confusion[1][c];
        let support = confusion[c][0] + confusion[c][1];
        let precision = ratio(tp, predicted);
        let recall = ratio(tp, support);
        ClassMetrics {
            label,
            precision,
            recall,
            f_measure: f_measure(precision, recall),
            support,
        }
    });
    let correct = confusion[0][0] + confusion[1][1];
    Ok(EvalReport {
        accuracy: ratio(correct, gold.len() as u64),
        per_class,
        confusion,
    })
}
