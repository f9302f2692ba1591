//! Document and passage retrieval over a local corpus.
//!
//! Questions become conjunctive concept queries; matching documents are
//! ranked by BM25 and then re-ranked by concept-graph similarity between the
//! question and each title. The abstracts of the surviving documents are
//! split into sentence passages, which are ranked by BM25 over stems and
//! concept ids.

mod index;
mod passages;
mod query;
mod remote;
mod rerank;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::conceptlex::ConceptLexicon;
use crate::textproc::{stem, tokenize, Stoplist};
use crate::{Error, Result};

pub use index::{bm25_score, build_index, idf, IndexMode, IndexedCorpus, UnitStats, INDEX_VERSION};
pub use passages::{extract_passages, rank_passages, PassageCandidate, ScoredPassage};
pub use query::{formulate_query, search, Query, SearchResult};
pub use remote::{parse_remote_idlist, FileStubSearcher, RemoteSearcher};
pub use rerank::rerank_documents;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub doc_id: String,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
}

/// Documents in file order with an id lookup.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    docs: Vec<DocumentRecord>,
    by_id: HashMap<String, usize>,
}

impl Corpus {
    pub fn new(docs: Vec<DocumentRecord>) -> Result<Self> {
        let mut by_id = HashMap::with_capacity(docs.len());
        for (i, d) in docs.iter().enumerate() {
            if by_id.insert(d.doc_id.clone(), i).is_some() {
                return Err(Error::DuplicateId {
                    id: d.doc_id.clone(),
                });
            }
        }
        Ok(Self { docs, by_id })
    }

    pub fn get(&self, doc_id: &str) -> Option<&DocumentRecord> {
        self.by_id.get(doc_id).map(|&i| &self.docs[i])
    }

    pub fn docs(&self) -> &[DocumentRecord] {
        &self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// `(doc_id, "title abstract")` pairs for document-mode indexing.
    pub fn units(&self) -> Vec<(String, String)> {
        self.docs
            .iter()
            .map(|d| (d.doc_id.clone(), format!("{} {}", d.title, d.abstract_text)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredDoc {
    pub doc_id: String,
    pub score: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self { k1: 1.2, b: 0.85 }
    }
}

impl Bm25Params {
    pub fn new(k1: f64, b: f64) -> Result<Self> {
        if !(k1 > 0.0 && k1.is_finite()) {
            return Err(Error::Config(format!("k1 must be positive, got {k1}")));
        }
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::Config(format!("b must lie in [0, 1], got {b}")));
        }
        Ok(Self { k1, b })
    }
}

/// Turns text into index terms: Porter stems of non-stopword tokens followed
/// by the cuis of recognized concepts.
#[derive(Debug, Clone, Copy)]
pub struct TermAnalyzer<'a> {
    pub stoplist: &'a Stoplist,
    pub lexicon: &'a ConceptLexicon,
}

impl<'a> TermAnalyzer<'a> {
    pub fn new(stoplist: &'a Stoplist, lexicon: &'a ConceptLexicon) -> Self {
        Self { stoplist, lexicon }
    }

    pub fn stems(&self, text: &str) -> Vec<String> {
        tokenize(text)
            .into_iter()
            .filter(|t| !t.is_punct())
            .map(|t| t.lower())
            .filter(|w| !self.stoplist.contains(w))
            .map(|w| stem(&w))
            .collect()
    }

    pub fn terms(&self, text: &str) -> Vec<String> {
        let mut terms = self.stems(text);
        terms.extend(self.lexicon.recognize(text).into_iter().map(|m| m.cui));
        terms
    }

    /// Distinct terms in first-occurrence order.
    pub fn query_terms(&self, text: &str) -> Vec<String> {
        dedup(self.terms(text))
    }
}

pub(crate) fn dedup(items: Vec<String>) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    items
        .into_iter()
        .filter(|t| seen.insert(t.clone()))
        .collect()
}
