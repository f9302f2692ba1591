//! Independent reference implementations used by the oracle tests and the
//! acceptance harness. They favour the most literal formulation over speed.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use bioqa::conceptlex::{ConceptGraph, ConceptLexicon, SentimentEntry, SentimentLexicon, TagClass};
use bioqa::retrieval::{build_index, DocumentRecord, IndexMode, IndexedCorpus, TermAnalyzer};
use bioqa::textproc::{Stoplist, TagLexicon};
use rand::seq::SliceRandom;
use rand::Rng;

// ---------- BM25 ----------

/// Two-letter words pass through tokenizer and stemmer unchanged, so an
/// analyzer with no stopwords and no concepts yields exactly the
/// whitespace-separated words.
pub const BM25_VOCAB: [&str; 8] = ["ka", "kb", "kc", "kd", "ke", "kf", "kg", "kh"];

pub struct Bm25Case {
    pub units: Vec<(String, String)>,
    pub query: Vec<String>,
}

pub fn random_bm25_case(rng: &mut impl Rng) -> Bm25Case {
    let n = rng.gen_range(1..=20);
    let units = (0..n)
        .map(|i| {
            let len = rng.gen_range(1..=12);
            let words: Vec<&str> = (0..len).map(|_| *BM25_VOCAB.choose(rng).unwrap()).collect();
            (format!("u{i}"), words.join(" "))
        })
        .collect();
    let q = rng.gen_range(1..=5);
    let query = (0..q)
        .map(|_| BM25_VOCAB.choose(rng).unwrap().to_string())
        .collect();
    Bm25Case { units, query }
}

pub fn plain_analyzer_parts() -> (Stoplist, ConceptLexicon) {
    (
        Stoplist::from_words(Vec::<String>::new()),
        ConceptLexicon::default(),
    )
}

pub fn index_units(
    units: &[(String, String)],
    stop: &Stoplist,
    lex: &ConceptLexicon,
) -> IndexedCorpus {
    build_index(units, IndexMode::Document, &TermAnalyzer::new(stop, lex)).unwrap()
}

/// Okapi BM25 straight from the formula, recomputing every statistic from
/// the raw texts.
pub fn bm25_direct(
    units: &[(String, String)],
    query: &[String],
    target: usize,
    k1: f64,
    b: f64,
) -> f64 {
    let docs: Vec<Vec<&str>> = units
        .iter()
        .map(|(_, t)| t.split_whitespace().collect())
        .collect();
    let n = docs.len() as f64;
    let avgdl = docs.iter().map(|d| d.len() as f64).sum::<f64>() / n;
    let d = &docs[target];
    let mut total = 0.0;
    for q in query {
        let df = docs.iter().filter(|d| d.contains(&q.as_str())).count() as f64;
        let idf = ((n - df + 0.5) / (df + 0.5)).ln();
        let f = d.iter().filter(|w| **w == q).count() as f64;
        if idf <= 0.0 || f == 0.0 {
            continue;
        }
        total += idf * (f * (k1 + 1.0)) / (f + k1 * (1.0 - b + b * d.len() as f64 / avgdl));
    }
    total
}

// ---------- re-ranking ----------

pub const CONCEPT_WORDS: [&str; 8] = [
    "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
];
const FILLER: [&str; 4] = ["study", "report", "case", "novel"];

pub struct RerankCase {
    pub lexicon: ConceptLexicon,
    pub graph: ConceptGraph,
    pub edges: Vec<(usize, usize)>,
    pub n_nodes: usize,
    pub question: String,
    pub docs: Vec<DocumentRecord>,
}

fn random_words(rng: &mut impl Rng, n_nodes: usize, max: usize) -> String {
    let len = rng.gen_range(0..=max);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.6) {
                CONCEPT_WORDS[rng.gen_range(0..n_nodes)]
            } else {
                FILLER.choose(rng).unwrap()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn random_rerank_case(rng: &mut impl Rng) -> RerankCase {
    let n_nodes = rng.gen_range(1..=8);
    let lex_text: String = (0..n_nodes)
        .map(|i| format!("C{i}\t{}\tT000\tThing\n", CONCEPT_WORDS[i]))
        .collect();
    let lexicon = ConceptLexicon::parse("lex", &lex_text).unwrap();
    let mut edges = Vec::new();
    for a in 0..n_nodes {
        for b in a + 1..n_nodes {
            if rng.gen_bool(0.3) {
                edges.push((a, b));
            }
        }
    }
    let graph_text: String = edges.iter().map(|(a, b)| format!("C{a}\tC{b}\n")).collect();
    let graph = ConceptGraph::parse("graph", &graph_text, &lexicon).unwrap();
    let question = random_words(rng, n_nodes, 5);
    let n_docs = rng.gen_range(0..=10);
    let docs = (0..n_docs)
        .map(|i| DocumentRecord {
            doc_id: format!("d{i}"),
            title: random_words(rng, n_nodes, 6),
            abstract_text: String::new(),
        })
        .collect();
    RerankCase {
        lexicon,
        graph,
        edges,
        n_nodes,
        question,
        docs,
    }
}

/// Distinct concept indexes in order of first mention; every concept has a
/// single-word surface so recognition is a word lookup.
fn concepts_in(text: &str, n_nodes: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for w in text.split_whitespace() {
        if let Some(i) = CONCEPT_WORDS[..n_nodes].iter().position(|c| *c == w) {
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
    out
}

/// All-pairs shortest paths by Floyd-Warshall, in edges.
fn floyd(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<Option<usize>>> {
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for &(a, b) in edges {
        d[a][b] = Some(1);
        d[b][a] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| x + y < cur) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Cross-product similarity sums followed by a stable descending sort.
pub fn rerank_brute(case: &RerankCase, m: usize) -> Vec<(String, f64)> {
    let dist = floyd(case.n_nodes, &case.edges);
    let q = concepts_in(&case.question, case.n_nodes);
    let mut scored: Vec<(String, f64)> = case
        .docs
        .iter()
        .map(|d| {
            let t = concepts_in(&d.title, case.n_nodes);
            let mut s = 0.0;
            for &a in &q {
                for &b in &t {
                    if let Some(e) = dist[a][b] {
                        s += 1.0 / (e + 1) as f64;
                    }
                }
            }
            (d.doc_id.clone(), s)
        })
        .collect();
    // insertion sort: stable by construction
    for i in 1..scored.len() {
        let mut j = i;
        while j > 0 && scored[j - 1].1 < scored[j].1 {
            scored.swap(j - 1, j);
            j -= 1;
        }
    }
    scored.truncate(m);
    scored
}

// ---------- ranking metrics ----------

pub fn random_ranking(rng: &mut impl Rng) -> (Vec<String>, Vec<String>) {
    let pool = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let ranked = (0..rng.gen_range(0..=8))
        .map(|_| pool.choose(rng).unwrap().to_string())
        .collect();
    let gold = (0..rng.gen_range(1..=4))
        .map(|_| pool.choose(rng).unwrap().to_string())
        .collect();
    (ranked, gold)
}

/// AP by enumerating every (i, j) pair of first-occurrence hits with i <= j:
/// each hit at j contributes (hits up to j) / j.
pub fn ap_enumerate(ranked: &[String], gold: &[String]) -> f64 {
    let mut g: Vec<&String> = gold.iter().collect();
    g.sort();
    g.dedup();
    let hit: Vec<bool> = ranked
        .iter()
        .enumerate()
        .map(|(i, x)| g.contains(&x) && !ranked[..i].contains(x))
        .collect();
    let mut num = 0.0;
    for j in 0..ranked.len() {
        if !hit[j] {
            continue;
        }
        let pairs = hit[..=j].iter().filter(|&&h| h).count();
        num += pairs as f64 / (j + 1) as f64;
    }
    num / g.len() as f64
}

pub fn mrr_direct(ranks: &[Option<usize>]) -> f64 {
    if ranks.is_empty() {
        return 0.0;
    }
    ranks
        .iter()
        .map(|r| r.map_or(0.0, |r| 1.0 / r as f64))
        .sum::<f64>()
        / ranks.len() as f64
}

// ---------- ROUGE ----------

pub fn random_text(rng: &mut impl Rng, max: usize) -> String {
    let vocab = ["a", "b", "c", "d"];
    (0..rng.gen_range(0..=max))
        .map(|_| *vocab.choose(rng).unwrap())
        .collect::<Vec<_>>()
        .join(" ")
}

fn count_of<T: PartialEq>(items: &[T], x: &T) -> usize {
    items.iter().filter(|y| *y == x).count()
}

/// Clipped overlap recall over explicit unit lists, counted by scanning.
fn overlap_recall<T: PartialEq + Clone>(cand: &[T], reference: &[T]) -> f64 {
    if reference.is_empty() {
        return 0.0;
    }
    let mut distinct: Vec<T> = Vec::new();
    for u in reference {
        if !distinct.contains(u) {
            distinct.push(u.clone());
        }
    }
    let matched: usize = distinct
        .iter()
        .map(|u| count_of(reference, u).min(count_of(cand, u)))
        .sum();
    matched as f64 / reference.len() as f64
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn ngrams_of(t: &[String], n: usize) -> Vec<Vec<String>> {
    if n == 0 || t.len() < n {
        return vec![];
    }
    (0..=t.len() - n).map(|i| t[i..i + n].to_vec()).collect()
}

pub fn rouge_n_enumerate(cand: &str, refs: &[String], n: usize) -> f64 {
    let c = ngrams_of(&words(cand), n);
    refs.iter()
        .map(|r| overlap_recall(&c, &ngrams_of(&words(r), n)))
        .fold(0.0, f64::max)
}

fn su_units(t: &[String], max_skip: usize) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = t.iter().map(|w| vec![w.clone()]).collect();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if j - i - 1 <= max_skip {
                out.push(vec![t[i].clone(), t[j].clone()]);
            }
        }
    }
    out
}

pub fn rouge_su_enumerate(cand: &str, refs: &[String], max_skip: usize) -> f64 {
    let c = su_units(&words(cand), max_skip);
    refs.iter()
        .map(|r| overlap_recall(&c, &su_units(&words(r), max_skip)))
        .fold(0.0, f64::max)
}

// ---------- yes/no vote ----------

pub const VOTE_WORDS: [(&str, &str); 10] = [
    ("good", "JJ"),
    ("bad", "JJ"),
    ("fail", "VB"),
    ("improve", "VB"),
    ("risk", "NN"),
    ("benefit", "NN"),
    ("rarely", "RB"),
    ("well", "RB"),
    ("the", "DT"),
    ("cell", "NN"),
];

pub struct VoteCase {
    pub tags: TagLexicon,
    pub entries: Vec<SentimentEntry>,
    pub passages: Vec<String>,
}

pub fn random_vote_case(rng: &mut impl Rng) -> VoteCase {
    let tag_text: String = VOTE_WORDS
        .iter()
        .map(|(w, t)| format!("{w}\t{t}\n"))
        .collect();
    let tags = TagLexicon::parse("tags", &tag_text).unwrap();
    let classes = [
        TagClass::N,
        TagClass::V,
        TagClass::A,
        TagClass::R,
        TagClass::Any,
    ];
    let mut entries = Vec::new();
    for (w, _) in VOTE_WORDS {
        for _ in 0..rng.gen_range(0..=2) {
            // quarter steps keep sums exact
            let p = rng.gen_range(0..=4) as f64 / 4.0;
            let n = rng.gen_range(0..=(4 - (p * 4.0) as u32)) as f64 / 4.0;
            entries.push(SentimentEntry {
                word: w.to_string(),
                tag_class: *classes.choose(rng).unwrap(),
                positivity: p,
                negativity: n,
            });
        }
    }
    let passages = (0..rng.gen_range(0..=7))
        .map(|_| {
            (0..rng.gen_range(1..=8))
                .map(|_| VOTE_WORDS.choose(rng).unwrap().0)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    VoteCase {
        tags,
        entries,
        passages,
    }
}

fn class_of(tag: &str) -> TagClass {
    match tag {
        "NN" => TagClass::N,
        "VB" => TagClass::V,
        "JJ" => TagClass::A,
        "RB" => TagClass::R,
        _ => TagClass::Any,
    }
}

/// Per-word lookup: a classless tag averages every entry; otherwise the
/// exact class, then `any`, then all entries. Summed per passage, then the
/// >= 0 vote.
pub fn vote_brute(case: &VoteCase) -> (bool, usize, usize) {
    let tag_of: HashMap<&str, &str> = VOTE_WORDS.iter().copied().collect();
    let mut by_word: BTreeMap<&str, Vec<&SentimentEntry>> = BTreeMap::new();
    for e in &case.entries {
        by_word.entry(e.word.as_str()).or_default().push(e);
    }
    let mean = |es: &[&SentimentEntry]| {
        es.iter().map(|e| e.positivity - e.negativity).sum::<f64>() / es.len() as f64
    };
    let mut pos = 0;
    let mut neg = 0;
    for p in &case.passages {
        let mut s = 0.0;
        for w in p.split_whitespace() {
            let Some(es) = by_word.get(w) else { continue };
            let class = class_of(tag_of[w]);
            let exact: Vec<&SentimentEntry> = es
                .iter()
                .copied()
                .filter(|e| e.tag_class == class)
                .collect();
            let any: Vec<&SentimentEntry> = es
                .iter()
                .copied()
                .filter(|e| e.tag_class == TagClass::Any)
                .collect();
            s += if class == TagClass::Any {
                mean(es)
            } else if !exact.is_empty() {
                mean(&exact)
            } else if !any.is_empty() {
                mean(&any)
            } else {
                mean(es)
            };
        }
        if s >= 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    (pos >= neg, pos, neg)
}

pub fn vote_lexicon(case: &VoteCase) -> SentimentLexicon {
    SentimentLexicon::from_entries(case.entries.clone()).unwrap()
}

// ---------- classifier ----------

/// Separability check by perceptron. Identical feature vectors with
/// different labels can never all be fit, so each distinct vector keeps its
/// majority label; a multiclass perceptron then runs until an epoch without
/// mistakes, which by the convergence theorem proves that reduced set
/// linearly separable. Returns the training accuracy a linear model can
/// therefore reach on the full data (the sum of the majority counts), or
/// `None` if the perceptron did not converge within `max_epochs`.
pub fn perceptron_reachable_accuracy(
    xs: &[BTreeMap<String, u32>],
    ys: &[usize],
    classes: usize,
    max_epochs: usize,
) -> Option<f64> {
    let mut groups: BTreeMap<&BTreeMap<String, u32>, Vec<usize>> = BTreeMap::new();
    for (x, &y) in xs.iter().zip(ys) {
        groups.entry(x).or_insert_with(|| vec![0; classes])[y] += 1;
    }
    let reduced: Vec<(&BTreeMap<String, u32>, usize)> = groups
        .iter()
        .map(|(x, counts)| {
            let best = (0..classes)
                .max_by_key(|&c| (counts[c], std::cmp::Reverse(c)))
                .unwrap();
            (*x, best)
        })
        .collect();
    let reachable: usize = groups.values().map(|c| c.iter().max().unwrap()).sum();

    let mut w: Vec<HashMap<&str, f64>> = vec![HashMap::new(); classes];
    let mut b = vec![0.0; classes];
    for _ in 0..max_epochs {
        let mut mistakes = 0;
        for &(x, y) in &reduced {
            let score = |c: usize| {
                b[c] + x
                    .iter()
                    .map(|(f, v)| w[c].get(f.as_str()).unwrap_or(&0.0) * f64::from(*v))
                    .sum::<f64>()
            };
            // the true class must win strictly
            let rival = (0..classes)
                .filter(|&c| c != y)
                .max_by(|&p, &q| score(p).total_cmp(&score(q)));
            if let Some(p) = rival.filter(|&p| score(p) >= score(y)) {
                mistakes += 1;
                for (f, v) in x {
                    *w[y].entry(f.as_str()).or_insert(0.0) += f64::from(*v);
                    *w[p].entry(f.as_str()).or_insert(0.0) -= f64::from(*v);
                }
                b[y] += 1.0;
                b[p] -= 1.0;
            }
        }
        if mistakes == 0 {
            return Some(reachable as f64 / xs.len() as f64);
        }
    }
    None
}
