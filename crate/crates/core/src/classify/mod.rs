//! Feature extraction, naive Bayes and linear SVM stance classifiers,
//! evaluation metrics and decision explanations.

mod explain;
mod grid;
mod metrics;
mod model;
mod nb;
mod svm;
mod vectorize;
mod vocab;

pub use explain::{explain_misclassification, Explanation, ExplanationRow};
pub use grid::{run_grid, GridCell, GridOptions, PreparedSplit};
pub use metrics::{evaluate, f_measure, ClassMetrics, EvalReport};
pub use model::{ClassifierKind, ClassifierSpec, TextClassifier, TrainedModel};
pub use nb::{predict_nb, train_nb, NbModel, NbPrediction};
pub use svm::{objective, predict_svm, train_svm, SvmConfig, SvmModel};
pub use vectorize::{count_vectorize, tfidf_vectorize, SparseVector, TfidfWeights, Vectorizer, VectorizerKind};
pub use vocab::{build_vocab, features, NgramRange, Vocabulary};
