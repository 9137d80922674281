use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::metrics::{evaluate, EvalReport};
use super::model::{ClassifierKind, ClassifierSpec, TextClassifier};
use super::svm::SvmConfig;
use super::vectorize::VectorizerKind;
use super::vocab::{build_vocab, NgramRange};
use crate::textprep::{CleaningMode, TokenizedDoc};
use crate::{Error, Result};

/// Train/test documents prepared under one cleaning mode.
#[derive(Debug, Clone)]
pub struct PreparedSplit {
    pub cleaning: CleaningMode,
    pub train: Vec<TokenizedDoc>,
    pub test: Vec<TokenizedDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridOptions {
    pub ranges: Vec<NgramRange>,
    pub vectorizers: Vec<VectorizerKind>,
    pub classifiers: Vec<ClassifierKind>,
    pub nb_alpha: f64,
    pub svm: SvmConfig,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            ranges: alloc::vec![NgramRange::Unigram, NgramRange::UniBigram],
            vectorizers: alloc::vec![VectorizerKind::Count, VectorizerKind::Tfidf],
            classifiers: alloc::vec![ClassifierKind::Svm, ClassifierKind::Nb],
            nb_alpha: 1.0,
            svm: SvmConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub cleaning: CleaningMode,
    pub ngram_range: NgramRange,
    pub vectorizer: VectorizerKind,
    pub classifier: ClassifierKind,
    pub n_features: usize,
    pub report: EvalReport,
}

/// Every combination of cleaning mode, n-gram range, vectorizer and
/// classifier, in that nesting order. One vocabulary is shared by all cells
/// with the same cleaning mode and range.
pub fn run_grid(splits: &[PreparedSplit], opts: &GridOptions) -> Result<Vec<GridCell>> {
    if splits.is_empty() {
        return Err(Error::Input("grid needs at least one prepared split".into()));
    }
    let mut cells = Vec::new();
    for split in splits {
        if split.test.is_empty() {
            return Err(Error::Input("test split is empty".into()));
        }
        let gold: Vec<_> = split.test.iter().map(|d| d.label).collect();
        for &range in &opts.ranges {
            let vocab = build_vocab(&split.train, range, "train")?;
            for &vectorizer in &opts.vectorizers {
                for &classifier in &opts.classifiers {
                    let spec = ClassifierSpec {
                        ngram_range: range,
                        vectorizer,
                        classifier,
                        nb_alpha: opts.nb_alpha,
                        svm: opts.svm,
                    };
                    let clf = TextClassifier::train_with_vocab(&split.train, vocab.clone(), &spec)?;
                    let predictions = clf.predict_docs(&split.test)?;
                    cells.push(GridCell {
                        cleaning: split.cleaning,
                        ngram_range: range,
                        vectorizer,
                        classifier,
                        n_features: vocab.len(),
                        report: evaluate(&predictions, &gold)?,
                    });
                }
            }
        }
    }
    Ok(cells)
}
