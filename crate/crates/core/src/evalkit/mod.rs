//! Evaluation measures: accuracy, P/R/F1, AP/MAP, MRR, list scores, ROUGE,
//! and a run evaluator over question datasets.

mod rouge;
mod run;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use rouge::{
    rouge_n, rouge_n_with, rouge_su, rouge_su_with, rouge_tokens, Aggregation, RougeConfig,
};
pub use run::{evaluate_run, EvalConfig, EvalReport, QuestionEval, SECTIONS};

/// Fraction of positions where prediction and gold agree; 0 for empty input.
pub fn accuracy<T: PartialEq>(predictions: &[T], gold: &[T]) -> Result<f64> {
    if predictions.len() != gold.len() {
        return Err(Error::LengthMismatch {
            left: predictions.len(),
            right: gold.len(),
        });
    }
    if gold.is_empty() {
        return Ok(0.0);
    }
    let k = predictions.iter().zip(gold).filter(|(p, g)| p == g).count();
    Ok(k as f64 / gold.len() as f64)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

/// Precision, recall and F1 with 0/0 taken as 0.
pub fn prf1(tp: usize, fp: usize, fn_: usize) -> Prf {
    let (tp, fp, fn_) = (tp as f64, fp as f64, fn_ as f64);
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    Prf {
        precision,
        recall,
        f1: ratio(2.0 * precision * recall, precision + recall),
    }
}

/// Sums `num/den` terms exactly while they fit in u128, so small cases come
/// out correctly rounded (AP of `[g, x, g]` is exactly `5.0 / 6.0`).
#[derive(Debug, Clone, Copy)]
struct FracSum {
    exact: Option<(u128, u128)>,
    approx: f64,
}

impl FracSum {
    fn new() -> Self {
        Self {
            exact: Some((0, 1)),
            approx: 0.0,
        }
    }

    fn gcd(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    fn add(&mut self, num: u128, den: u128) {
        self.approx += num as f64 / den as f64;
        self.exact = self.exact.and_then(|(n, d)| {
            let n = n.checked_mul(den)?.checked_add(num.checked_mul(d)?)?;
            let d = d.checked_mul(den)?;
            let g = Self::gcd(n, d).max(1);
            Some((n / g, d / g))
        });
    }

    /// The sum divided by `divisor`.
    fn value_over(self, divisor: u128) -> f64 {
        match self
            .exact
            .and_then(|(n, d)| Some((n, d.checked_mul(divisor)?)))
        {
            Some((n, d)) if n < (1 << 53) && d < (1 << 53) => n as f64 / d as f64,
            _ => self.approx / divisor as f64,
        }
    }
}

/// Sum of precision at each relevant rank divided by the number of gold
/// items. A gold id repeated in the ranking counts once.
pub fn average_precision<S: AsRef<str>>(ranked: &[S], gold: &[S]) -> Result<f64> {
    let gold: HashSet<&str> = gold.iter().map(AsRef::as_ref).collect();
    if gold.is_empty() {
        return Err(Error::EmptyGold);
    }
    let mut seen = HashSet::new();
    let mut hits = 0u128;
    let mut sum = FracSum::new();
    for (i, id) in ranked.iter().enumerate() {
        let id = id.as_ref();
        if gold.contains(id) && seen.insert(id) {
            hits += 1;
            sum.add(hits, i as u128 + 1);
        }
    }
    Ok(sum.value_over(gold.len() as u128))
}

pub fn map(average_precisions: &[f64]) -> Result<f64> {
    if average_precisions.is_empty() {
        return Err(Error::EmptyRuns);
    }
    Ok(average_precisions.iter().sum::<f64>() / average_precisions.len() as f64)
}

/// Mean of `1/rank`, with `None` (not found) contributing 0. Empty input gives 0.
pub fn mrr(ranks: &[Option<usize>]) -> f64 {
    if ranks.is_empty() {
        return 0.0;
    }
    let mut sum = FracSum::new();
    for r in ranks.iter().flatten().filter(|&&r| r > 0) {
        sum.add(1, *r as u128);
    }
    sum.value_over(ranks.len() as u128)
}

/// Lowercase with runs of whitespace collapsed to one space.
pub fn normalize_name(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

fn names_match(a: &[String], b: &[String]) -> bool {
    let b: HashSet<String> = b.iter().map(|s| normalize_name(s)).collect();
    a.iter().any(|s| b.contains(&normalize_name(s)))
}

/// 1-based position of the first predicted entity sharing a name with any
/// gold synonym set.
pub fn first_match_rank(predicted: &[Vec<String>], gold: &[Vec<String>]) -> Option<usize> {
    predicted
        .iter()
        .position(|p| gold.iter().any(|g| names_match(p, g)))
        .map(|i| i + 1)
}

/// True positives under one-to-one matching: each predicted entity takes the
/// first still-unmatched gold set it shares a name with.
pub fn list_true_positives(predicted: &[Vec<String>], gold: &[Vec<String>]) -> usize {
    let mut used = vec![false; gold.len()];
    let mut tp = 0;
    for p in predicted {
        if let Some(j) = (0..gold.len()).find(|&j| !used[j] && names_match(p, &gold[j])) {
            used[j] = true;
            tp += 1;
        }
    }
    tp
}

/// Scores one list question.
pub fn list_prf(predicted: &[Vec<String>], gold: &[Vec<String>]) -> Prf {
    let tp = list_true_positives(predicted, gold);
    prf1(tp, predicted.len() - tp, gold.len() - tp)
}

type SynonymSets = Vec<Vec<String>>;

/// Mean precision, recall and F1 over `(predicted, gold)` pairs, each side a
/// list of synonym sets.
pub fn list_metrics(questions: &[(SynonymSets, SynonymSets)]) -> Prf {
    if questions.is_empty() {
        return Prf::default();
    }
    let n = questions.len() as f64;
    let mut acc = Prf::default();
    for (p, g) in questions {
        let s = list_prf(p, g);
        acc.precision += s.precision;
        acc.recall += s.recall;
        acc.f1 += s.f1;
    }
    Prf {
        precision: acc.precision / n,
        recall: acc.recall / n,
        f1: acc.f1 / n,
    }
}
