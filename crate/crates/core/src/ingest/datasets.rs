use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::read_file;
use crate::qclass::{DepPair, LabeledQuestion, QuestionType, TopicQuestion};
use crate::{Error, Result};

pub(crate) const BUNDLED_APPENDIX: &str = include_str!("../../data/appendix_a.json");

/// An exact answer as written in a dataset file: `"yes"`, a flat list of
/// names, or a list of synonym lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactPayload {
    Text(String),
    Flat(Vec<String>),
    Nested(Vec<Vec<String>>),
}

impl ExactPayload {
    /// Entity name sets; a flat list is one singleton set per name.
    pub fn name_sets(&self) -> Vec<Vec<String>> {
        match self {
            ExactPayload::Text(s) => vec![vec![s.clone()]],
            ExactPayload::Flat(v) => v.iter().map(|s| vec![s.clone()]).collect(),
            ExactPayload::Nested(v) => v.clone(),
        }
    }
}

// `[]` reads back as `Flat`, so list shapes compare by their name sets.
impl PartialEq for ExactPayload {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactPayload::Text(a), ExactPayload::Text(b)) => a == b,
            (ExactPayload::Text(_), _) | (_, ExactPayload::Text(_)) => false,
            _ => self.name_sets() == other.name_sets(),
        }
    }
}

impl Eq for ExactPayload {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnippetRecord {
    pub document: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

/// One question in the BioASQ-shaped dataset format; gold files and run
/// files share it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionRecord {
    pub id: String,
    pub body: String,
    #[serde(rename = "type")]
    pub qtype: QuestionType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_answer: Option<ExactPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_answer: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub documents: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snippets: Option<Vec<SnippetRecord>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl QuestionRecord {
    /// Checks that the exact answer has the shape its type calls for.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.id.trim().is_empty() {
            return Err("empty id".into());
        }
        if self.body.trim().is_empty() {
            return Err(format!("question `{}` has an empty body", self.id));
        }
        let Some(exact) = &self.exact_answer else {
            return Ok(());
        };
        let bad = |what: &str| Err(format!("{} question `{}`: {what}", self.qtype, self.id));
        match (self.qtype, exact) {
            (QuestionType::Summary, _) => bad("summary questions take no exact answer"),
            (QuestionType::Yesno, ExactPayload::Text(s)) if s == "yes" || s == "no" => Ok(()),
            (QuestionType::Yesno, _) => bad("exact answer must be \"yes\" or \"no\""),
            (QuestionType::Factoid | QuestionType::List, ExactPayload::Text(_)) => {
                bad("exact answer must be a list of names or of synonym lists")
            }
            (_, p) => {
                let sets = p.name_sets();
                if sets
                    .iter()
                    .any(|s| s.is_empty() || s.iter().any(|n| n.trim().is_empty()))
                {
                    bad("empty name or synonym set")
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QuestionDataset {
    pub questions: Vec<QuestionRecord>,
}

impl QuestionDataset {
    /// Validates every record and id uniqueness.
    pub fn new(questions: Vec<QuestionRecord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for q in &questions {
            q.validate().map_err(Error::Config)?;
            if !seen.insert(q.id.as_str()) {
                return Err(Error::DuplicateId { id: q.id.clone() });
            }
        }
        Ok(Self { questions })
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&QuestionRecord> {
        self.questions.iter().find(|q| q.id == id)
    }

    pub fn count_of(&self, qtype: QuestionType) -> usize {
        self.questions.iter().filter(|q| q.qtype == qtype).count()
    }

    pub fn labeled(&self) -> Vec<LabeledQuestion> {
        self.questions
            .iter()
            .map(|q| LabeledQuestion {
                id: q.id.clone(),
                text: q.body.clone(),
                qtype: q.qtype,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serializes")
    }
}

/// Accepts a `{"questions": [...]}` document or JSON Lines with one record per line.
pub fn parse_questions(source_name: &str, content: &str) -> Result<QuestionDataset> {
    let json_err = |e: serde_json::Error| Error::Json {
        source_name: source_name.to_string(),
        message: e.to_string(),
    };
    let located = |e: Error| match e {
        Error::Config(m) => Error::Json {
            source_name: source_name.to_string(),
            message: m,
        },
        other => other,
    };
    let trimmed = content.trim_start();
    if trimmed.is_empty() {
        return Ok(QuestionDataset::default());
    }
    if let Ok(serde_json::Value::Object(map)) = serde_json::from_str::<serde_json::Value>(content) {
        if map.contains_key("questions") {
            let ds: QuestionDataset = serde_json::from_str(content).map_err(json_err)?;
            return QuestionDataset::new(ds.questions).map_err(located);
        }
    }
    let mut records = Vec::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: QuestionRecord = serde_json::from_str(line)
            .map_err(|e| Error::parse(source_name, i + 1, e.to_string()))?;
        rec.validate()
            .map_err(|m| Error::parse(source_name, i + 1, m))?;
        records.push(rec);
    }
    QuestionDataset::new(records)
}

pub fn load_questions(path: impl AsRef<Path>) -> Result<QuestionDataset> {
    let path = path.as_ref();
    parse_questions(&path.display().to_string(), &read_file(path)?)
}

/// The 30 example questions of the bundled evaluation set.
pub fn bundled_questions() -> QuestionDataset {
    parse_questions("appendix_a.json", BUNDLED_APPENDIX).expect("bundled questions parse")
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TopicDataset {
    pub questions: Vec<TopicQuestion>,
}

impl TopicDataset {
    /// Fills in dependency pairs from a sidecar; records that already carry
    /// pairs keep them.
    pub fn attach_dependencies(&mut self, deps: &BTreeMap<String, Vec<DepPair>>) {
        for q in &mut self.questions {
            if q.dep_pairs.is_none() {
                q.dep_pairs = deps.get(&q.id).cloned();
            }
        }
    }
}

pub fn parse_topic_questions(source_name: &str, content: &str) -> Result<TopicDataset> {
    let ds: TopicDataset = serde_json::from_str(content).map_err(|e| Error::Json {
        source_name: source_name.to_string(),
        message: e.to_string(),
    })?;
    let mut seen = HashSet::new();
    for q in &ds.questions {
        if !seen.insert(q.id.as_str()) {
            return Err(Error::DuplicateId { id: q.id.clone() });
        }
    }
    Ok(ds)
}

pub fn load_topic_questions(path: impl AsRef<Path>) -> Result<TopicDataset> {
    let path = path.as_ref();
    parse_topic_questions(&path.display().to_string(), &read_file(path)?)
}

/// Parses `question_id<TAB>rel<TAB>head<TAB>dependent` lines.
pub fn parse_dependencies(
    source_name: &str,
    content: &str,
) -> Result<BTreeMap<String, Vec<DepPair>>> {
    let mut out: BTreeMap<String, Vec<DepPair>> = BTreeMap::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [id, rel, head, dependent] = cols[..] else {
            return Err(Error::parse(
                source_name,
                i + 1,
                "expected `question_id<TAB>rel<TAB>head<TAB>dependent`",
            ));
        };
        if [id, rel, head, dependent].iter().any(|c| c.is_empty()) {
            return Err(Error::parse(source_name, i + 1, "empty column"));
        }
        out.entry(id.to_string()).or_default().push(DepPair {
            rel: rel.to_string(),
            head: head.to_string(),
            dependent: dependent.to_string(),
        });
    }
    Ok(out)
}

pub fn load_dependencies(path: impl AsRef<Path>) -> Result<BTreeMap<String, Vec<DepPair>>> {
    let path = path.as_ref();
    parse_dependencies(&path.display().to_string(), &read_file(path)?)
}
