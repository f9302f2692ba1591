use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    average_precision, first_match_rank, list_prf, normalize_name, prf1, rouge_n_with,
    rouge_su_with, RougeConfig,
};
use crate::ingest::{ExactPayload, QuestionDataset, QuestionRecord};
use crate::qclass::QuestionType;
use crate::{Error, Result};

/// Report sections, selectable with [`EvalConfig::sections`].
pub const SECTIONS: [&str; 6] = ["yesno", "factoid", "list", "documents", "snippets", "rouge"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct EvalConfig {
    pub rouge: RougeConfig,
    /// Sections to report; `None` means all.
    pub sections: Option<Vec<String>>,
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self
            .sections
            .iter()
            .flatten()
            .find(|s| !SECTIONS.contains(&s.as_str()))
        {
            return Err(Error::Config(format!(
                "unknown metric section `{s}` (expected one of {})",
                SECTIONS.join(", ")
            )));
        }
        if matches!(self.rouge.beta, Some(b) if !(b > 0.0 && b.is_finite())) {
            return Err(Error::Config("rouge beta must be positive".into()));
        }
        Ok(())
    }

    fn wants(&self, section: &str) -> bool {
        self.sections
            .as_ref()
            .is_none_or(|s| s.iter().any(|x| x == section))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionEval {
    pub id: String,
    #[serde(rename = "type")]
    pub qtype: QuestionType,
    pub answered: bool,
    pub metrics: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub questions: usize,
    pub answered: usize,
    /// Section-qualified metric names such as `factoid.mrr`.
    pub metrics: BTreeMap<String, f64>,
    /// Number of questions each section averages over.
    pub counts: BTreeMap<String, usize>,
    pub per_question: Vec<QuestionEval>,
    pub config: EvalConfig,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned two-column table of the aggregate metrics.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self
            .metrics
            .keys()
            .map(String::len)
            .max()
            .unwrap_or(6)
            .max(6);
        let _ = writeln!(
            out,
            "questions {}  answered {}",
            self.questions, self.answered
        );
        let _ = writeln!(out, "{:<width$}  {:>8}  {:>4}", "metric", "value", "n");
        for (name, value) in &self.metrics {
            let section = name.split('.').next().unwrap_or("");
            let n = self.counts.get(section).copied().unwrap_or(0);
            let _ = writeln!(out, "{name:<width$}  {value:>8.4}  {n:>4}");
        }
        out
    }
}

fn names(p: Option<&ExactPayload>) -> Vec<Vec<String>> {
    p.map(ExactPayload::name_sets).unwrap_or_default()
}

fn retrieval_scores(ranked: &[String], gold: &[String]) -> [(&'static str, f64); 4] {
    let uniq = |v: &[String]| -> Vec<String> {
        let mut seen = std::collections::HashSet::new();
        v.iter()
            .filter(|x| seen.insert(x.as_str()))
            .cloned()
            .collect()
    };
    let (ranked, gold) = (uniq(ranked), uniq(gold));
    let tp = ranked.iter().filter(|d| gold.contains(d)).count();
    let s = prf1(tp, ranked.len() - tp, gold.len() - tp);
    let ap = average_precision(&ranked, &gold).unwrap_or(0.0);
    [
        ("precision", s.precision),
        ("recall", s.recall),
        ("f1", s.f1),
        ("map", ap),
    ]
}

fn score_question(
    gold: &QuestionRecord,
    run: Option<&QuestionRecord>,
    config: &EvalConfig,
) -> QuestionEval {
    let mut m = BTreeMap::new();
    let mut put = |section: &str, name: &str, v: f64| {
        if config.wants(section) {
            m.insert(format!("{section}.{name}"), v);
        }
    };
    let run_exact = run.and_then(|r| r.exact_answer.as_ref());
    match gold.qtype {
        QuestionType::Yesno if gold.exact_answer.is_some() => {
            let ok = matches!((run_exact, &gold.exact_answer), (Some(ExactPayload::Text(a)), Some(ExactPayload::Text(b))) if a.trim().eq_ignore_ascii_case(b));
            put("yesno", "accuracy", f64::from(u8::from(ok)));
        }
        QuestionType::Factoid if gold.exact_answer.is_some() => {
            let g = names(gold.exact_answer.as_ref());
            let rank = first_match_rank(&names(run_exact), &g);
            put(
                "factoid",
                "strict_accuracy",
                f64::from(u8::from(rank == Some(1))),
            );
            put(
                "factoid",
                "lenient_accuracy",
                f64::from(u8::from(rank.is_some_and(|r| r <= 5))),
            );
            put("factoid", "mrr", rank.map_or(0.0, |r| 1.0 / r as f64));
        }
        QuestionType::List if gold.exact_answer.is_some() => {
            let s = list_prf(&names(run_exact), &names(gold.exact_answer.as_ref()));
            put("list", "precision", s.precision);
            put("list", "recall", s.recall);
            put("list", "f1", s.f1);
        }
        _ => {}
    }
    if let Some(gd) = gold.documents.as_ref().filter(|d| !d.is_empty()) {
        let rd = run.and_then(|r| r.documents.clone()).unwrap_or_default();
        for (name, v) in retrieval_scores(&rd, gd) {
            put("documents", name, v);
        }
    }
    if let Some(gs) = gold.snippets.as_ref().filter(|s| !s.is_empty()) {
        let key = |t: &str| normalize_name(t);
        let gk: Vec<String> = gs.iter().map(|s| key(&s.text)).collect();
        let mut rs: Vec<_> = run.and_then(|r| r.snippets.clone()).unwrap_or_default();
        rs.sort_by_key(|s| s.rank.unwrap_or(usize::MAX));
        let rk: Vec<String> = rs.iter().map(|s| key(&s.text)).collect();
        for (name, v) in retrieval_scores(&rk, &gk) {
            put("snippets", name, v);
        }
    }
    if let Some(refs) = gold.ideal_answer.as_ref().filter(|r| !r.is_empty()) {
        let cand = run
            .and_then(|r| r.ideal_answer.as_ref())
            .map(|v| v.join(" "))
            .unwrap_or_default();
        put(
            "rouge",
            "rouge_2",
            rouge_n_with(&cand, refs, 2, &config.rouge),
        );
        put(
            "rouge",
            "rouge_su4",
            rouge_su_with(&cand, refs, &config.rouge),
        );
    }
    QuestionEval {
        id: gold.id.clone(),
        qtype: gold.qtype,
        answered: run.is_some(),
        metrics: m,
    }
}

/// Scores `run` against `gold`. Gold questions without a run entry score 0;
/// run entries whose id is not in the gold set are an error.
pub fn evaluate_run(
    gold: &QuestionDataset,
    run: &QuestionDataset,
    config: &EvalConfig,
) -> Result<EvalReport> {
    config.validate()?;
    let by_id: HashMap<&str, &QuestionRecord> =
        run.questions.iter().map(|q| (q.id.as_str(), q)).collect();
    let unknown: Vec<String> = run
        .questions
        .iter()
        .filter(|q| gold.get(&q.id).is_none())
        .map(|q| q.id.clone())
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownQuestionIds(unknown));
    }
    let per_question: Vec<QuestionEval> = gold
        .questions
        .par_iter()
        .map(|g| score_question(g, by_id.get(g.id.as_str()).copied(), config))
        .collect();

    let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for q in &per_question {
        for (k, v) in &q.metrics {
            let e = sums.entry(k.clone()).or_insert((0.0, 0));
            e.0 += v;
            e.1 += 1;
        }
    }
    let mut counts = BTreeMap::new();
    let metrics = sums
        .into_iter()
        .map(|(k, (sum, n))| {
            let section = k.split('.').next().unwrap_or_default().to_string();
            counts.insert(section, n);
            (k, sum / n as f64)
        })
        .collect();
    Ok(EvalReport {
        questions: gold.len(),
        answered: per_question.iter().filter(|q| q.answered).count(),
        metrics,
        counts,
        per_question,
        config: config.clone(),
    })
}
