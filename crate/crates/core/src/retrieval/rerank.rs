use super::{DocumentRecord, ScoredDoc};
use crate::conceptlex::{ConceptGraph, ConceptLexicon};

/// Scores each document by the summed path similarity between the question's
/// concepts and its title's concepts, sorts by that score (stable, so equal
/// scores keep their input order) and keeps the first `m`.
pub fn rerank_documents(
    question: &str,
    docs: &[DocumentRecord],
    lexicon: &ConceptLexicon,
    graph: &ConceptGraph,
    m: usize,
) -> Vec<ScoredDoc> {
    let q_concepts = lexicon.concept_ids(question);
    let mut scored: Vec<(usize, f64)> = docs
        .iter()
        .enumerate()
        .map(|(i, d)| {
            (
                i,
                graph.similarity_sum(&q_concepts, &lexicon.concept_ids(&d.title)),
            )
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1));
    scored
        .into_iter()
        .take(m)
        .enumerate()
        .map(|(rank, (i, score))| ScoredDoc {
            doc_id: docs[i].doc_id.clone(),
            score,
            rank: rank + 1,
        })
        .collect()
}
