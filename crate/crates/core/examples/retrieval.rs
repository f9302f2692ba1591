//! Query formulation, BM25 search, title re-ranking and passage ranking over
//! the bundled corpus.

use bioqa::ingest::{bundled_corpus, ResourceBundle};
use bioqa::retrieval::{
    build_index, extract_passages, formulate_query, rank_passages, rerank_documents, search,
    Bm25Params, Corpus, IndexMode,
};

fn main() {
    let res = ResourceBundle::bundled();
    let analyzer = res.analyzer();
    let corpus = Corpus::new(bundled_corpus()).unwrap();
    let index = build_index(&corpus.units(), IndexMode::Document, &analyzer).unwrap();
    let params = Bm25Params::default();

    let q = "Is Tuberous Sclerosis a genetic disease?";
    let query = formulate_query(q, &analyzer);
    println!("query: {}", query.boolean());

    let hits = search(&index, &query, 200, params);
    println!("bm25 (relaxed: {}):", hits.relaxed);
    for d in &hits.docs {
        println!("  {:>2} {:>7.3} {}", d.rank, d.score, d.doc_id);
    }

    let docs: Vec<_> = hits
        .docs
        .iter()
        .filter_map(|d| corpus.get(&d.doc_id).cloned())
        .collect();
    let reranked = rerank_documents(q, &docs, &res.lexicon, &res.graph, 10);
    println!("re-ranked by title concepts:");
    for d in &reranked {
        println!(
            "  {:>2} {:>7.3} {}  {}",
            d.rank,
            d.score,
            d.doc_id,
            corpus.get(&d.doc_id).unwrap().title
        );
    }

    let top: Vec<_> = reranked
        .iter()
        .filter_map(|d| corpus.get(&d.doc_id).cloned())
        .collect();
    let passages = rank_passages(
        q,
        &extract_passages(&top, &res.abbreviations),
        &analyzer,
        params,
        3,
    );
    println!("passages:");
    for p in passages {
        println!(
            "  {:.3} {}[{}] {}",
            p.score, p.passage.doc_id, p.passage.sent_index, p.passage.text
        );
    }
}
