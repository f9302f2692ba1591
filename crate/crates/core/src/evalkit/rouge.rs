use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::textproc::stem;
use crate::{Error, Result};

/// How scores against several references are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    /// Best single reference.
    Max,
    /// Mean over references.
    Mean,
    /// Matches and reference counts summed over all references before dividing.
    Pooled,
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::Max => "max",
            Aggregation::Mean => "mean",
            Aggregation::Pooled => "pooled",
        })
    }
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Aggregation::Max),
            "mean" => Ok(Aggregation::Mean),
            "pooled" => Ok(Aggregation::Pooled),
            _ => Err(Error::Config(format!("unknown aggregation `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RougeConfig {
    /// F-beta weight; `None` reports recall.
    pub beta: Option<f64>,
    /// Porter-stem tokens before matching.
    pub stem: bool,
    /// Largest number of tokens allowed between the two words of a skip bigram.
    pub max_skip: usize,
    pub aggregation: Aggregation,
}

impl Default for RougeConfig {
    fn default() -> Self {
        Self {
            beta: None,
            stem: false,
            max_skip: 4,
            aggregation: Aggregation::Max,
        }
    }
}

/// Lowercased alphanumeric runs; everything else separates tokens.
pub fn rouge_tokens(text: &str, stemmed: bool) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.to_lowercase();
            if stemmed {
                stem(&t)
            } else {
                t
            }
        })
        .collect()
}

type Units = HashMap<String, usize>;

fn ngram_units(tokens: &[String], n: usize) -> Units {
    let mut m = Units::new();
    if n == 0 {
        return m;
    }
    for w in tokens.windows(n) {
        *m.entry(w.join(" ")).or_insert(0) += 1;
    }
    m
}

fn skip_units(tokens: &[String], max_skip: usize) -> Units {
    let mut m = Units::new();
    for (i, a) in tokens.iter().enumerate() {
        *m.entry(a.clone()).or_insert(0) += 1;
        for b in tokens.iter().skip(i + 1).take(max_skip + 1) {
            // a tab cannot occur inside a token, so bigrams never collide with unigrams
            *m.entry(format!("{a}\t{b}")).or_insert(0) += 1;
        }
    }
    m
}

fn clipped(cand: &Units, reference: &Units) -> (usize, usize, usize) {
    let matches = reference
        .iter()
        .map(|(u, &c)| c.min(cand.get(u).copied().unwrap_or(0)))
        .sum();
    (matches, cand.values().sum(), reference.values().sum())
}

fn score(matches: usize, cand_total: usize, ref_total: usize, beta: Option<f64>) -> f64 {
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let recall = ratio(matches, ref_total);
    match beta {
        None => recall,
        Some(beta) => {
            let precision = ratio(matches, cand_total);
            let b2 = beta * beta;
            let denom = recall + b2 * precision;
            if denom == 0.0 {
                0.0
            } else {
                (1.0 + b2) * precision * recall / denom
            }
        }
    }
}

fn aggregate<S: AsRef<str>>(
    candidate: &str,
    references: &[S],
    config: &RougeConfig,
    units: impl Fn(&[String]) -> Units,
) -> f64 {
    if references.is_empty() {
        return 0.0;
    }
    let cand = units(&rouge_tokens(candidate, config.stem));
    let per_ref: Vec<(usize, usize, usize)> = references
        .iter()
        .map(|r| clipped(&cand, &units(&rouge_tokens(r.as_ref(), config.stem))))
        .collect();
    match config.aggregation {
        Aggregation::Max => per_ref
            .iter()
            .map(|&(m, c, r)| score(m, c, r, config.beta))
            .fold(0.0, f64::max),
        Aggregation::Mean => {
            per_ref
                .iter()
                .map(|&(m, c, r)| score(m, c, r, config.beta))
                .sum::<f64>()
                / per_ref.len() as f64
        }
        Aggregation::Pooled => {
            let m = per_ref.iter().map(|x| x.0).sum();
            let r = per_ref.iter().map(|x| x.2).sum();
            let c = per_ref.iter().map(|x| x.1).sum();
            score(m, c, r, config.beta)
        }
    }
}

/// ROUGE-N recall with the default configuration. `n == 0` scores 0.
pub fn rouge_n<S: AsRef<str>>(candidate: &str, references: &[S], n: usize) -> f64 {
    rouge_n_with(candidate, references, n, &RougeConfig::default())
}

pub fn rouge_n_with<S: AsRef<str>>(
    candidate: &str,
    references: &[S],
    n: usize,
    config: &RougeConfig,
) -> f64 {
    aggregate(candidate, references, config, |t| ngram_units(t, n))
}

/// ROUGE-SU: skip bigrams with at most `max_skip` tokens between the pair,
/// plus unigrams, as one multiset.
pub fn rouge_su<S: AsRef<str>>(candidate: &str, references: &[S], max_skip: usize) -> f64 {
    rouge_su_with(
        candidate,
        references,
        &RougeConfig {
            max_skip,
            ..RougeConfig::default()
        },
    )
}

pub fn rouge_su_with<S: AsRef<str>>(
    candidate: &str,
    references: &[S],
    config: &RougeConfig,
) -> f64 {
    aggregate(candidate, references, config, |t| {
        skip_units(t, config.max_skip)
    })
}
