use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::vocab::Vocabulary;
use crate::textprep::TokenizedDoc;
use crate::windowed::idf_from_df;
use crate::{Error, Result};

/// Sorted `(column, weight)` pairs; zero weights are never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SparseVector {
    entries: Vec<(usize, f64)>,
    dimension: usize,
}

impl SparseVector {
    pub fn zeros(dimension: usize) -> Self {
        SparseVector {
            entries: Vec::new(),
            dimension,
        }
    }

    /// Sums duplicate columns and drops zeros.
    pub fn from_pairs(dimension: usize, pairs: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
        for (col, w) in pairs {
            if col >= dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: col + 1,
                });
            }
            *acc.entry(col).or_insert(0.0) += w;
        }
        Ok(SparseVector {
            entries: acc.into_iter().filter(|(_, w)| *w != 0.0).collect(),
            dimension,
        })
    }

    pub fn from_dense(values: &[f64]) -> Self {
        SparseVector {
            entries: values.iter().copied().enumerate().filter(|(_, w)| *w != 0.0).collect(),
            dimension: values.len(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn get(&self, column: usize) -> f64 {
        self.entries
            .binary_search_by_key(&column, |(c, _)| *c)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|(_, w)| w * w).sum())
    }

    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.entries.iter().map(|(c, w)| w * dense[*c]).sum()
    }

    pub fn check_dimension(&self, expected: usize) -> Result<()> {
        if self.dimension != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.dimension,
            });
        }
        Ok(())
    }

    fn scale(&mut self, factor: f64) {
        for (_, w) in &mut self.entries {
            *w *= factor;
        }
    }

    /// Scales to unit Euclidean norm; the zero vector stays zero.
    pub fn l2_normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            self.scale(1.0 / n);
        }
    }
}

/// Raw in-vocabulary feature counts.
pub fn count_vectorize(tokens: &[alloc::string::String], vocab: &Vocabulary) -> SparseVector {
    SparseVector::from_pairs(vocab.len(), vocab.columns(tokens).into_iter().map(|c| (c, 1.0)))
        .expect("vocabulary columns are in range")
}

/// Per-column idf weights fitted on training documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfWeights {
    pub idf: Vec<f64>,
}

impl TfidfWeights {
    /// `idf_j = ln((1 + N) / (1 + df_j)) + 1` over the `N` training docs.
    pub fn fit(train_docs: &[TokenizedDoc], vocab: &Vocabulary) -> Result<Self> {
        if train_docs.is_empty() {
            return Err(Error::Input("cannot fit idf on zero documents".into()));
        }
        let mut df = alloc::vec![0usize; vocab.len()];
        for d in train_docs {
            let mut cols = vocab.columns(&d.tokens);
            cols.sort_unstable();
            cols.dedup();
            for c in cols {
                df[c] += 1;
            }
        }
        let n = train_docs.len();
        Ok(TfidfWeights {
            idf: df.into_iter().map(|d| idf_from_df(d, n)).collect(),
        })
    }

    /// Counts weighted by idf, then L2-normalized.
    pub fn transform(&self, tokens: &[alloc::string::String], vocab: &Vocabulary) -> Result<SparseVector> {
        if self.idf.len() != vocab.len() {
            return Err(Error::DimensionMismatch {
                expected: vocab.len(),
                got: self.idf.len(),
            });
        }
        let mut v = count_vectorize(tokens, vocab);
        for (c, w) in &mut v.entries {
            *w *= self.idf[*c];
        }
        v.l2_normalize();
        Ok(v)
    }
}

/// Fits idf on `train_docs` and returns their vectors with the weights.
pub fn tfidf_vectorize(train_docs: &[TokenizedDoc], vocab: &Vocabulary) -> Result<(Vec<SparseVector>, TfidfWeights)> {
    let weights = TfidfWeights::fit(train_docs, vocab)?;
    let matrix = train_docs
        .iter()
        .map(|d| weights.transform(&d.tokens, vocab))
        .collect::<Result<Vec<_>>>()?;
    Ok((matrix, weights))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorizerKind {
    Count,
    Tfidf,
}

impl VectorizerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VectorizerKind::Count => "count",
            VectorizerKind::Tfidf => "tfidf",
        }
    }
}

/// A fitted vectorizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Vectorizer {
    Count,
    Tfidf(TfidfWeights),
}

impl Vectorizer {
    pub fn fit(kind: VectorizerKind, train_docs: &[TokenizedDoc], vocab: &Vocabulary) -> Result<Self> {
        Ok(match kind {
            VectorizerKind::Count => Vectorizer::Count,
            VectorizerKind::Tfidf => Vectorizer::Tfidf(TfidfWeights::fit(train_docs, vocab)?),
        })
    }

    pub fn kind(&self) -> VectorizerKind {
        match self {
            Vectorizer::Count => VectorizerKind::Count,
            Vectorizer::Tfidf(_) => VectorizerKind::Tfidf,
        }
    }

    pub fn transform(&self, tokens: &[alloc::string::String], vocab: &Vocabulary) -> Result<SparseVector> {
        match self {
            Vectorizer::Count => Ok(count_vectorize(tokens, vocab)),
            Vectorizer::Tfidf(w) => w.transform(tokens, vocab),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::vocab::{build_vocab, NgramRange};
    use crate::corpus::StanceLabel;
    use alloc::string::String;
    use alloc::vec;

    fn toks(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| String::from(*s)).collect()
    }

    fn doc(xs: &[&str]) -> TokenizedDoc {
        TokenizedDoc::new("d", StanceLabel::Left, toks(xs))
    }

    #[test]
    fn counts() {
        let vocab = Vocabulary::from_features(NgramRange::Unigram, "t", toks(&["mask", "up"]));
        let v = count_vectorize(&toks(&["mask", "mask", "up"]), &vocab);
        assert_eq!(v.iter().collect::<Vec<_>>(), vec![(0, 2.0), (1, 1.0)]);
        assert!(count_vectorize(&toks(&["zzz"]), &vocab).is_zero());
    }

    #[test]
    fn single_doc_saturates() {
        let docs = [doc(&["a", "b", "a"])];
        let vocab = build_vocab(&docs, NgramRange::Unigram, "t").unwrap();
        let (m, w) = tfidf_vectorize(&docs, &vocab).unwrap();
        assert_eq!(w.idf, vec![1.0, 1.0]);
        assert!((m[0].norm() - 1.0).abs() < 1e-12);
        let one = w.transform(&toks(&["b"]), &vocab).unwrap();
        assert_eq!(one.iter().collect::<Vec<_>>(), vec![(1, 1.0)]);
        assert!(w.transform(&toks(&["q"]), &vocab).unwrap().is_zero());
    }

    #[test]
    fn sparse_invariants() {
        let v = SparseVector::from_pairs(4, [(2, 1.0), (0, 0.0), (2, -1.0), (3, 2.0)]).unwrap();
        assert_eq!(v.iter().collect::<Vec<_>>(), vec![(3, 2.0)]);
        assert!(SparseVector::from_pairs(2, [(2, 1.0)]).is_err());
        assert_eq!(v.get(3), 2.0);
        assert_eq!(v.get(1), 0.0);
    }
}
