use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::nb::{train_nb, NbModel};
use super::svm::{train_svm, SvmConfig, SvmModel};
use super::vectorize::{SparseVector, Vectorizer, VectorizerKind};
use super::vocab::{build_vocab, NgramRange, Vocabulary};
use crate::corpus::StanceLabel;
use crate::textprep::TokenizedDoc;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierKind {
    Nb,
    Svm,
}

impl ClassifierKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassifierKind::Nb => "nb",
            ClassifierKind::Svm => "svm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TrainedModel {
    Nb(NbModel),
    Svm(SvmModel),
}

impl TrainedModel {
    pub fn kind(&self) -> ClassifierKind {
        match self {
            TrainedModel::Nb(_) => ClassifierKind::Nb,
            TrainedModel::Svm(_) => ClassifierKind::Svm,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            TrainedModel::Nb(m) => m.dimension(),
            TrainedModel::Svm(m) => m.dimension(),
        }
    }

    /// The model as `score = base + Σ_j x_j weight_j`, positive meaning
    /// left. For naive Bayes this is the log-odds of left over right.
    pub fn linear_form(&self) -> (Vec<f64>, f64) {
        match self {
            TrainedModel::Svm(m) => (m.weights.clone(), m.bias),
            TrainedModel::Nb(m) => {
                let [left, right] = &m.feature_log_likelihoods;
                let weights = left.iter().zip(right).map(|(l, r)| l - r).collect();
                (weights, m.class_log_priors[0] - m.class_log_priors[1])
            }
        }
    }

    /// Label and decision score (SVM margin, or NB log-odds).
    pub fn predict(&self, x: &SparseVector) -> Result<(StanceLabel, f64)> {
        match self {
            TrainedModel::Svm(m) => m.predict(x),
            TrainedModel::Nb(m) => {
                let p = m.predict(x)?;
                Ok((p.label, p.log_posteriors[0] - p.log_posteriors[1]))
            }
        }
    }
}

/// Everything needed to train one classifier from tokenized documents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierSpec {
    pub ngram_range: NgramRange,
    pub vectorizer: VectorizerKind,
    pub classifier: ClassifierKind,
    pub nb_alpha: f64,
    pub svm: SvmConfig,
}

impl ClassifierSpec {
    pub fn new(ngram_range: NgramRange, vectorizer: VectorizerKind, classifier: ClassifierKind) -> Self {
        ClassifierSpec {
            ngram_range,
            vectorizer,
            classifier,
            nb_alpha: 1.0,
            svm: SvmConfig::default(),
        }
    }
}

/// A vocabulary, fitted vectorizer and trained model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextClassifier {
    pub spec: ClassifierSpec,
    pub vocab: Vocabulary,
    pub vectorizer: Vectorizer,
    pub model: TrainedModel,
}

impl TextClassifier {
    pub fn train(train_docs: &[TokenizedDoc], spec: &ClassifierSpec) -> Result<Self> {
        let vocab = build_vocab(train_docs, spec.ngram_range, "train")?;
        Self::train_with_vocab(train_docs, vocab, spec)
    }

    /// Trains against a prebuilt vocabulary (shared across grid cells).
    pub fn train_with_vocab(train_docs: &[TokenizedDoc], vocab: Vocabulary, spec: &ClassifierSpec) -> Result<Self> {
        let vectorizer = Vectorizer::fit(spec.vectorizer, train_docs, &vocab)?;
        let matrix = train_docs
            .iter()
            .map(|d| vectorizer.transform(&d.tokens, &vocab))
            .collect::<Result<Vec<_>>>()?;
        let labels: Vec<StanceLabel> = train_docs.iter().map(|d| d.label).collect();
        let model = match spec.classifier {
            ClassifierKind::Nb => TrainedModel::Nb(train_nb(&matrix, &labels, spec.nb_alpha)?),
            ClassifierKind::Svm => TrainedModel::Svm(train_svm(&matrix, &labels, &spec.svm)?),
        };
        Ok(TextClassifier {
            spec: *spec,
            vocab,
            vectorizer,
            model,
        })
    }

    pub fn vectorize(&self, tokens: &[alloc::string::String]) -> Result<SparseVector> {
        self.vectorizer.transform(tokens, &self.vocab)
    }

    pub fn predict(&self, tokens: &[alloc::string::String]) -> Result<(StanceLabel, f64)> {
        self.model.predict(&self.vectorize(tokens)?)
    }

    pub fn predict_docs(&self, docs: &[TokenizedDoc]) -> Result<Vec<StanceLabel>> {
        docs.iter().map(|d| self.predict(&d.tokens).map(|(l, _)| l)).collect()
    }
}
