//! Biomedical question answering over a local abstract corpus.
//!
//! The crate is organised along the stages of the pipeline:
//!
//! - [`textproc`]: tokenization, sentence splitting, POS tagging, Porter stemming.
//! - [`conceptlex`]: dictionary concept recognition, concept-graph path similarity,
//!   sentiment lexicon.
//! - [`qclass`]: question type classification (lexico-syntactic patterns + linear
//!   max-margin classifier) and multi-label topic classification.
//! - [`retrieval`]: conjunctive concept queries, inverted index, title-similarity
//!   document re-ranking, sentence passages, BM25 passage ranking.
//! - [`answer`]: yes/no sentiment vote, entity answers, ideal answers and the
//!   end-to-end [`answer::QaSystem`].
//! - [`evalkit`]: accuracy, P/R/F1, AP/MAP, MRR, ROUGE-2 and ROUGE-SU4.
//! - [`ingest`]: loaders and persistence for corpora, datasets, resources, indexes.
//! - [`cli`]: the `bioqa` command-line front end.
//!
//! Every resource the pipeline needs ships in `data/`; [`ingest::ResourceBundle::bundled`]
//! loads them without touching the filesystem.

pub mod answer;
pub mod cli;
pub mod conceptlex;
mod error;
pub mod evalkit;
pub mod ingest;
pub mod qclass;
pub mod retrieval;
pub mod textproc;

pub use error::{Error, Result};

use std::path::PathBuf;

/// Directory holding the bundled resources, corpus and datasets.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}
