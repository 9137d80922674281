//! Profiling and classifying the partisan stance of political tweets:
//! ingest, COVID filtering, keyword profiles under bag-of-words, bigram
//! and windowed max-TF-IDF models, and linear stance classifiers.

pub mod chart;
pub mod cli;
pub mod config;
pub mod error;
pub mod export;
pub mod ingest;
pub mod manifest;
pub mod model_io;
pub mod persist;
pub mod pipeline;
pub mod resources;
pub mod synth;

pub use error::{Error, Result};
