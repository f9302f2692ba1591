use serde::{Deserialize, Serialize};

use super::index::build_positional;
use super::{Bm25Params, DocumentRecord, TermAnalyzer};
use crate::textproc::{split_sentences, Abbreviations};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassageCandidate {
    pub text: String,
    pub doc_id: String,
    /// 0-based sentence ordinal within the abstract.
    pub sent_index: usize,
    /// 1-based rank of the source document in the list passages came from.
    pub doc_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredPassage {
    pub passage: PassageCandidate,
    pub score: f64,
}

/// One candidate per abstract sentence, in document then sentence order.
pub fn extract_passages(
    docs: &[DocumentRecord],
    abbreviations: &Abbreviations,
) -> Vec<PassageCandidate> {
    docs.iter()
        .enumerate()
        .flat_map(|(d, doc)| {
            split_sentences(&doc.abstract_text, abbreviations)
                .into_iter()
                .enumerate()
                .map(move |(s, sent)| PassageCandidate {
                    text: sent.text,
                    doc_id: doc.doc_id.clone(),
                    sent_index: s,
                    doc_rank: d + 1,
                })
        })
        .collect()
}

/// BM25 over a passage index built from the candidates themselves. Equal
/// scores fall back to document rank, then sentence order.
pub fn rank_passages(
    question: &str,
    candidates: &[PassageCandidate],
    analyzer: &TermAnalyzer,
    params: Bm25Params,
    top_n: usize,
) -> Vec<ScoredPassage> {
    let texts: Vec<&str> = candidates.iter().map(|c| c.text.as_str()).collect();
    let index = build_positional(&texts, analyzer);
    let query = analyzer.query_terms(question);
    let mut scored: Vec<(usize, f64)> = (0..candidates.len())
        .map(|i| (i, index.score_ordinal(&query, i, params)))
        .collect();
    scored.sort_by(|&(i, si), &(j, sj)| {
        sj.total_cmp(&si)
            .then(candidates[i].doc_rank.cmp(&candidates[j].doc_rank))
            .then(candidates[i].sent_index.cmp(&candidates[j].sent_index))
            .then(i.cmp(&j))
    });
    scored
        .into_iter()
        .take(top_n)
        .map(|(i, score)| ScoredPassage {
            passage: candidates[i].clone(),
            score,
        })
        .collect()
}
