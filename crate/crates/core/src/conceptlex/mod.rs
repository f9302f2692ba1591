//! File-backed concept resources: a concept dictionary with longest-match
//! recognition, an undirected concept hierarchy for path similarity, and a
//! word-level sentiment lexicon.

mod graph;
mod lexicon;
mod sentiment;

pub use graph::{similarity_or_minus_one, ConceptGraph};
pub use lexicon::{Concept, ConceptLexicon, ConceptMention};
pub use sentiment::{SentimentEntry, SentimentLexicon, TagClass};
