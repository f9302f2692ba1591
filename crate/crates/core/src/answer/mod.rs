//! Answer extraction: the sentiment vote for yes/no questions, frequency
//! ranked entities for factoid and list questions, two-snippet ideal answers
//! and the end-to-end [`QaSystem`].

mod entities;
mod pipeline;
mod yesno;

use serde::{Deserialize, Serialize};

use crate::ingest::{ExactPayload, QuestionRecord, SnippetRecord};
use crate::qclass::QuestionType;
use crate::retrieval::{rank_passages, Bm25Params, PassageCandidate, ScoredPassage, TermAnalyzer};

pub use entities::{rank_entities, Entity};
pub use pipeline::{answer_pipeline, question_id, DocumentRetrieval, PipelineConfig, QaSystem};
pub use yesno::{answer_yesno, passage_sentiment, vote, YesNo, YesNoVote};

pub const FACTOID_LIMIT: usize = 5;
pub const DEFAULT_LIST_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactAnswer {
    Yesno(YesNo),
    Factoid(Vec<Entity>),
    List(Vec<Entity>),
}

impl ExactAnswer {
    /// The dataset-file shape: `"yes"`/`"no"`, or one name list per entity.
    pub fn to_payload(&self) -> ExactPayload {
        match self {
            ExactAnswer::Yesno(v) => ExactPayload::Text(v.to_string()),
            ExactAnswer::Factoid(es) | ExactAnswer::List(es) => {
                ExactPayload::Nested(es.iter().map(Entity::names).collect())
            }
        }
    }

    pub fn entities(&self) -> &[Entity] {
        match self {
            ExactAnswer::Yesno(_) => &[],
            ExactAnswer::Factoid(es) | ExactAnswer::List(es) => es,
        }
    }
}

pub fn answer_factoid<S: AsRef<str>>(
    passages: &[S],
    question: &str,
    lexicon: &crate::conceptlex::ConceptLexicon,
) -> ExactAnswer {
    let mut es = rank_entities(passages, question, lexicon);
    es.truncate(FACTOID_LIMIT);
    ExactAnswer::Factoid(es)
}

pub fn answer_list<S: AsRef<str>>(
    passages: &[S],
    question: &str,
    lexicon: &crate::conceptlex::ConceptLexicon,
    cap: usize,
) -> ExactAnswer {
    let mut es = rank_entities(passages, question, lexicon);
    es.truncate(cap);
    ExactAnswer::List(es)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealAnswer {
    pub text: String,
    /// `(doc_id, sent_index)` of each concatenated sentence.
    pub sources: Vec<(String, usize)>,
}

/// The two passages with the highest BM25 score, joined by a space.
pub fn ideal_answer(
    question: &str,
    passages: &[PassageCandidate],
    analyzer: &TermAnalyzer,
    params: Bm25Params,
) -> IdealAnswer {
    let top = rank_passages(question, passages, analyzer, params, 2);
    IdealAnswer {
        text: top
            .iter()
            .map(|p| p.passage.text.as_str())
            .collect::<Vec<_>>()
            .join(" "),
        sources: top
            .iter()
            .map(|p| (p.passage.doc_id.clone(), p.passage.sent_index))
            .collect(),
    }
}

/// Everything the pipeline produced for one question.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "QuestionRecord")]
pub struct FullAnswer {
    pub id: String,
    pub question: String,
    pub question_type: QuestionType,
    /// Absent for summary questions.
    pub exact: Option<ExactAnswer>,
    pub ideal: IdealAnswer,
    pub documents: Vec<String>,
    pub supporting: Vec<ScoredPassage>,
    pub flags: Vec<String>,
}

impl FullAnswer {
    pub fn to_record(&self) -> QuestionRecord {
        QuestionRecord {
            id: self.id.clone(),
            body: self.question.clone(),
            qtype: self.question_type,
            exact_answer: self.exact.as_ref().map(ExactAnswer::to_payload),
            ideal_answer: Some(vec![self.ideal.text.clone()]),
            documents: Some(self.documents.clone()),
            snippets: Some(
                self.supporting
                    .iter()
                    .enumerate()
                    .map(|(i, p)| SnippetRecord {
                        document: p.passage.doc_id.clone(),
                        text: p.passage.text.clone(),
                        rank: Some(i + 1),
                    })
                    .collect(),
            ),
            flags: self.flags.clone(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("answer serializes")
    }
}

impl From<FullAnswer> for QuestionRecord {
    fn from(a: FullAnswer) -> Self {
        a.to_record()
    }
}
