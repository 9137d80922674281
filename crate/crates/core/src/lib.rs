//! Core algorithms for partisan stance profiling of short political texts.
//!
//! Everything here is pure computation over owned values and only needs an
//! allocator: tweet records and splits, text normalization (tokenizer, Porter
//! stemmer, dictionary lemmatizer), per-party unigram/bigram tables and
//! distinct-keyword extraction, chronological windowed TF-IDF, and the
//! vectorizers and linear classifiers (multinomial naive Bayes, linear SVM)
//! used for left/right prediction. File formats, IO and the command line
//! live in the `stancecraft` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod classify;
pub mod corpus;
pub mod ngram;
pub mod textprep;
pub mod windowed;

pub use error::{Error, Result};
