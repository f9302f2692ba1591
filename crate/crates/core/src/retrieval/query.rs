use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{dedup, Bm25Params, IndexMode, IndexedCorpus, ScoredDoc, TermAnalyzer};
use crate::textproc::{content_words, stem};

/// A conjunctive concept query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    /// Lowercased preferred names of the recognized concepts, sorted.
    pub concept_terms: Vec<String>,
    /// Recognized cuis in order of first mention.
    pub concept_cuis: Vec<String>,
    /// Lowercased non-stopword tokens; the fallback when no concept is found.
    pub raw_terms: Vec<String>,
    /// Stems and cuis used for BM25 ranking.
    pub index_terms: Vec<String>,
}

impl Query {
    /// The boolean form sent to a search engine, e.g. `antidepressive agents AND imatinib`.
    pub fn boolean(&self) -> String {
        let terms = if self.concept_terms.is_empty() {
            &self.raw_terms
        } else {
            &self.concept_terms
        };
        terms.join(" AND ")
    }

    /// Index terms every conjunctive hit must contain: the cuis, or the
    /// stems of the raw terms when no concept was recognized.
    pub fn conjuncts(&self) -> Vec<String> {
        if self.concept_cuis.is_empty() {
            dedup(self.raw_terms.iter().map(|t| stem(t)).collect())
        } else {
            self.concept_cuis.clone()
        }
    }
}

pub fn formulate_query(question: &str, analyzer: &TermAnalyzer) -> Query {
    let lexicon = analyzer.lexicon;
    let concept_cuis = lexicon.concept_ids(question);
    let concept_terms: BTreeSet<String> = concept_cuis
        .iter()
        .filter_map(|c| lexicon.get(c))
        .map(|c| c.preferred.to_lowercase())
        .collect();
    Query {
        concept_terms: concept_terms.into_iter().collect(),
        concept_cuis,
        raw_terms: dedup(content_words(question, analyzer.stoplist)),
        index_terms: analyzer.query_terms(question),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub docs: Vec<ScoredDoc>,
    /// True when no unit contained every conjunct and any-term matching was used.
    pub relaxed: bool,
}

/// Conjunctive search with any-term relaxation, ranked by BM25 over the
/// query's index terms. Ties keep corpus order.
pub fn search(
    index: &IndexedCorpus,
    query: &Query,
    limit: usize,
    params: Bm25Params,
) -> SearchResult {
    debug_assert_eq!(index.mode, IndexMode::Document);
    let units_with = |term: &str| -> HashSet<usize> {
        index
            .postings
            .get(term)
            .map(|p| p.iter().map(|&(o, _)| o).collect())
            .unwrap_or_default()
    };
    let conjuncts = query.conjuncts();
    let mut candidates: Option<HashSet<usize>> = None;
    for term in &conjuncts {
        let hits = units_with(term);
        candidates = Some(match candidates {
            None => hits,
            Some(c) => c.intersection(&hits).copied().collect(),
        });
    }
    let mut candidates = candidates.unwrap_or_default();
    let mut relaxed = false;
    if candidates.is_empty() {
        relaxed = true;
        for term in conjuncts.iter().chain(&query.index_terms) {
            candidates.extend(units_with(term));
        }
    }
    let mut ordered: Vec<usize> = candidates.into_iter().collect();
    ordered.sort_unstable();
    let mut scored: Vec<(usize, f64)> = ordered
        .into_iter()
        .map(|o| (o, index.score_ordinal(&query.index_terms, o, params)))
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1));
    let docs = scored
        .into_iter()
        .take(limit)
        .enumerate()
        .map(|(i, (o, score))| ScoredDoc {
            doc_id: index.unit_id(o).to_string(),
            score,
            rank: i + 1,
        })
        .collect();
    SearchResult { docs, relaxed }
}
