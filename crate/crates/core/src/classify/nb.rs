//! Multinomial naive Bayes with additive (Laplace) smoothing.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::vectorize::SparseVector;
use crate::corpus::StanceLabel;
use crate::{Error, Result};

/// Per-class parameters, indexed by [`StanceLabel::index`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbModel {
    pub class_log_priors: [f64; 2],
    pub feature_log_likelihoods: [Vec<f64>; 2],
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbPrediction {
    pub label: StanceLabel,
    /// Normalized log posteriors, indexed by [`StanceLabel::index`].
    pub log_posteriors: [f64; 2],
}

pub(crate) fn check_training_set(matrix: &[SparseVector], labels: &[StanceLabel]) -> Result<usize> {
    if matrix.len() != labels.len() {
        return Err(Error::LengthMismatch(matrix.len(), labels.len()));
    }
    let dim = matrix.first().map(SparseVector::dimension).unwrap_or(0);
    for x in matrix {
        x.check_dimension(dim)?;
    }
    for label in StanceLabel::BOTH {
        if !labels.contains(&label) {
            return Err(Error::MissingClass(label.value()));
        }
    }
    Ok(dim)
}

/// `log P(c) = ln(n_c / n)`;
/// `log P(j | c) = ln((alpha + N_cj) / (alpha * |V| + N_c))`.
pub fn train_nb(matrix: &[SparseVector], labels: &[StanceLabel], alpha: f64) -> Result<NbModel> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Config(alloc::format!(
            "smoothing alpha must be positive, got {alpha}"
        )));
    }
    let dim = check_training_set(matrix, labels)?;
    let n = labels.len() as f64;
    let mut class_counts = [0usize; 2];
    let mut feature_counts = [alloc::vec![0.0; dim], alloc::vec![0.0; dim]];
    for (x, label) in matrix.iter().zip(labels) {
        let c = label.index();
        class_counts[c] += 1;
        for (j, w) in x.iter() {
            feature_counts[c][j] += w;
        }
    }
    let log_prior = |c: usize| libm::log(class_counts[c] as f64 / n);
    let log_lik = |counts: &[f64]| -> Vec<f64> {
        let denom = alpha * dim as f64 + counts.iter().sum::<f64>();
        counts.iter().map(|c| libm::log((alpha + c) / denom)).collect()
    };
    Ok(NbModel {
        class_log_priors: [log_prior(0), log_prior(1)],
        feature_log_likelihoods: [log_lik(&feature_counts[0]), log_lik(&feature_counts[1])],
        alpha,
    })
}

impl NbModel {
    pub fn dimension(&self) -> usize {
        self.feature_log_likelihoods[0].len()
    }

    /// Unnormalized `log P(c) + Σ_j x_j log P(j | c)` per class.
    pub fn joint_log_likelihood(&self, x: &SparseVector) -> Result<[f64; 2]> {
        x.check_dimension(self.dimension())?;
        Ok([0, 1].map(|c| self.class_log_priors[c] + x.dot(&self.feature_log_likelihoods[c])))
    }

    /// Equal posteriors resolve to left.
    pub fn predict(&self, x: &SparseVector) -> Result<NbPrediction> {
        let joint = self.joint_log_likelihood(x)?;
        let max = joint[0].max(joint[1]);
        let log_norm = max + libm::log(libm::exp(joint[0] - max) + libm::exp(joint[1] - max));
        let label = if joint[0] >= joint[1] {
            StanceLabel::Left
        } else {
            StanceLabel::Right
        };
        Ok(NbPrediction {
            label,
            log_posteriors: [joint[0] - log_norm, joint[1] - log_norm],
        })
    }
}

pub fn predict_nb(model: &NbModel, x: &SparseVector) -> Result<NbPrediction> {
    model.predict(x)
}
