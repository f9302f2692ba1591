use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Bm25Params, TermAnalyzer};
use crate::{Error, Result};

pub const INDEX_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexMode {
    Document,
    Passage,
}

impl fmt::Display for IndexMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexMode::Document => "document",
            IndexMode::Passage => "passage",
        })
    }
}

impl FromStr for IndexMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "document" | "doc" => Ok(IndexMode::Document),
            "passage" => Ok(IndexMode::Passage),
            _ => Err(Error::Config(format!("unknown index mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitStats {
    pub id: String,
    /// Number of index terms (stems plus concepts).
    pub length: usize,
}

/// Inverted index over stems and concept ids with the statistics BM25 needs.
/// Postings refer to units by their position in `units`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedCorpus {
    pub version: u32,
    pub mode: IndexMode,
    pub k1_default: f64,
    pub b_default: f64,
    pub n: usize,
    pub avg_len: f64,
    pub units: Vec<UnitStats>,
    pub postings: BTreeMap<String, Vec<(usize, u32)>>,
    #[serde(skip)]
    lookup: HashMap<String, usize>,
}

impl IndexedCorpus {
    fn from_term_lists(mode: IndexMode, ids: Vec<String>, term_lists: Vec<Vec<String>>) -> Self {
        let mut postings: BTreeMap<String, Vec<(usize, u32)>> = BTreeMap::new();
        let mut units = Vec::with_capacity(ids.len());
        for (ordinal, (id, terms)) in ids.into_iter().zip(term_lists).enumerate() {
            let mut tf: BTreeMap<&str, u32> = BTreeMap::new();
            for t in &terms {
                *tf.entry(t.as_str()).or_insert(0) += 1;
            }
            for (t, f) in tf {
                postings
                    .entry(t.to_string())
                    .or_default()
                    .push((ordinal, f));
            }
            units.push(UnitStats {
                id,
                length: terms.len(),
            });
        }
        let n = units.len();
        let avg_len = if n == 0 {
            0.0
        } else {
            units.iter().map(|u| u.length as f64).sum::<f64>() / n as f64
        };
        let defaults = Bm25Params::default();
        let mut index = IndexedCorpus {
            version: INDEX_VERSION,
            mode,
            k1_default: defaults.k1,
            b_default: defaults.b,
            n,
            avg_len,
            units,
            postings,
            lookup: HashMap::new(),
        };
        index.rebuild_lookup();
        index
    }

    /// Restores the id lookup after deserialization.
    pub(crate) fn rebuild_lookup(&mut self) {
        self.lookup = self
            .units
            .iter()
            .enumerate()
            .map(|(i, u)| (u.id.clone(), i))
            .collect();
    }

    pub fn ordinal(&self, unit_id: &str) -> Option<usize> {
        self.lookup.get(unit_id).copied()
    }

    pub fn unit_id(&self, ordinal: usize) -> &str {
        &self.units[ordinal].id
    }

    /// Number of units containing `term`.
    pub fn doc_freq(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }

    pub fn term_freq(&self, term: &str, ordinal: usize) -> u32 {
        self.postings
            .get(term)
            .and_then(|p| {
                p.binary_search_by_key(&ordinal, |&(o, _)| o)
                    .ok()
                    .map(|i| p[i].1)
            })
            .unwrap_or(0)
    }

    pub fn default_params(&self) -> Bm25Params {
        Bm25Params {
            k1: self.k1_default,
            b: self.b_default,
        }
    }

    pub(crate) fn score_ordinal(
        &self,
        query_terms: &[String],
        ordinal: usize,
        params: Bm25Params,
    ) -> f64 {
        let len = self.units[ordinal].length as f64;
        let norm = if self.avg_len > 0.0 {
            len / self.avg_len
        } else {
            1.0
        };
        let mut score = 0.0;
        for q in query_terms {
            let f = f64::from(self.term_freq(q, ordinal));
            if f == 0.0 {
                continue;
            }
            let w = idf(self.n, self.doc_freq(q));
            if w <= 0.0 {
                continue;
            }
            score +=
                w * f * (params.k1 + 1.0) / (f + params.k1 * (1.0 - params.b + params.b * norm));
        }
        score
    }
}

/// `ln((N - n + 0.5) / (n + 0.5))`.
pub fn idf(n_units: usize, doc_freq: usize) -> f64 {
    let n = n_units as f64;
    let df = doc_freq as f64;
    ((n - df + 0.5) / (df + 0.5)).ln()
}

/// Indexes `(id, text)` units. Text analysis runs in parallel; postings are
/// merged in input order so the result does not depend on scheduling.
pub fn build_index(
    units: &[(String, String)],
    mode: IndexMode,
    analyzer: &TermAnalyzer,
) -> Result<IndexedCorpus> {
    let mut seen = HashMap::with_capacity(units.len());
    for (id, _) in units {
        if seen.insert(id.as_str(), ()).is_some() {
            return Err(Error::DuplicateId { id: id.clone() });
        }
    }
    let term_lists: Vec<Vec<String>> = units
        .par_iter()
        .map(|(_, text)| analyzer.terms(text))
        .collect();
    let ids = units.iter().map(|(id, _)| id.clone()).collect();
    Ok(IndexedCorpus::from_term_lists(mode, ids, term_lists))
}

/// Builds an index over units addressed only by position; used for passages,
/// whose ids need not be unique.
pub(crate) fn build_positional(texts: &[&str], analyzer: &TermAnalyzer) -> IndexedCorpus {
    let term_lists: Vec<Vec<String>> = texts.par_iter().map(|t| analyzer.terms(t)).collect();
    let ids = (0..texts.len()).map(|i| i.to_string()).collect();
    IndexedCorpus::from_term_lists(IndexMode::Passage, ids, term_lists)
}

/// Okapi BM25 of one unit for the given query terms. Terms whose IDF is not
/// positive contribute nothing.
pub fn bm25_score(
    query_terms: &[String],
    unit_id: &str,
    index: &IndexedCorpus,
    k1: f64,
    b: f64,
) -> Result<f64> {
    let ordinal = index
        .ordinal(unit_id)
        .ok_or_else(|| Error::UnknownUnit(unit_id.to_string()))?;
    let params = Bm25Params::new(k1, b)?;
    Ok(index.score_ordinal(query_terms, ordinal, params))
}
