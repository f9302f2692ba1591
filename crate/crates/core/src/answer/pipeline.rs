use log::warn;
use serde::{Deserialize, Serialize};

use super::{
    answer_factoid, answer_list, answer_yesno, ideal_answer, ExactAnswer, FullAnswer,
    DEFAULT_LIST_CAP,
};
use crate::ingest::ResourceBundle;
use crate::qclass::{classify_type, FeatureExtractor, LinearModel, QuestionType};
use crate::retrieval::{
    extract_passages, formulate_query, rank_passages, rerank_documents, search, Bm25Params, Corpus,
    DocumentRecord, IndexMode, IndexedCorpus, Query, RemoteSearcher, ScoredDoc, ScoredPassage,
    TermAnalyzer,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Documents fetched before re-ranking.
    pub retrieve_depth: usize,
    /// Documents kept after re-ranking.
    pub top_docs: usize,
    pub top_passages: usize,
    pub bm25: Bm25Params,
    pub list_cap: usize,
    /// Skip the type classifier and use this type.
    pub force_type: Option<QuestionType>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            retrieve_depth: 200,
            top_docs: 10,
            top_passages: 10,
            bm25: Bm25Params::default(),
            list_cap: DEFAULT_LIST_CAP,
            force_type: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        Bm25Params::new(self.bm25.k1, self.bm25.b)?;
        if self.retrieve_depth == 0 || self.top_docs == 0 || self.top_passages == 0 {
            return Err(Error::Config(
                "retrieve-depth, top-docs and top-passages must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentRetrieval {
    pub query: Query,
    /// Re-ranked documents, at most `top_docs`.
    pub docs: Vec<ScoredDoc>,
    pub flags: Vec<String>,
}

/// Loaded resources, corpus, document index and type model.
pub struct QaSystem {
    pub resources: ResourceBundle,
    pub corpus: Corpus,
    pub index: IndexedCorpus,
    pub type_model: LinearModel,
    pub extractor: FeatureExtractor,
    pub config: PipelineConfig,
    remote: Option<Box<dyn RemoteSearcher + Send + Sync>>,
}

impl QaSystem {
    pub fn new(
        resources: ResourceBundle,
        corpus: Corpus,
        index: IndexedCorpus,
        type_model: LinearModel,
        config: PipelineConfig,
    ) -> Result<Self> {
        config.validate()?;
        if index.mode != IndexMode::Document {
            return Err(Error::Config(format!(
                "the pipeline needs a document index, got a {} index",
                index.mode
            )));
        }
        if let Some(u) = index.units.iter().find(|u| corpus.get(&u.id).is_none()) {
            return Err(Error::Config(format!(
                "index unit `{}` is not in the corpus",
                u.id
            )));
        }
        let extractor = FeatureExtractor::new(resources.tags.clone(), resources.patterns.clone());
        Ok(Self {
            resources,
            corpus,
            index,
            type_model,
            extractor,
            config,
            remote: None,
        })
    }

    /// Bundled resources, corpus and type model with a freshly built index.
    pub fn bundled() -> Result<Self> {
        let resources = ResourceBundle::bundled();
        let corpus = Corpus::new(crate::ingest::bundled_corpus())?;
        let index = crate::retrieval::build_index(
            &corpus.units(),
            IndexMode::Document,
            &resources.analyzer(),
        )?;
        let model = crate::ingest::bundled_type_model();
        Self::new(resources, corpus, index, model, PipelineConfig::default())
    }

    /// Fetch candidate documents from `remote` instead of the local index.
    /// Ids unknown to the corpus are dropped; on failure the local index is used.
    pub fn with_remote(mut self, remote: Box<dyn RemoteSearcher + Send + Sync>) -> Self {
        self.remote = Some(remote);
        self
    }

    pub fn analyzer(&self) -> TermAnalyzer<'_> {
        self.resources.analyzer()
    }

    pub fn classify(&self, question: &str) -> QuestionType {
        self.config
            .force_type
            .unwrap_or_else(|| classify_type(&self.type_model, &self.extractor, question))
    }

    fn candidate_docs(&self, query: &Query, flags: &mut Vec<String>) -> Vec<DocumentRecord> {
        if let Some(remote) = &self.remote {
            match remote.search_ids(query, self.config.retrieve_depth) {
                Ok(ids) => {
                    return ids
                        .iter()
                        .filter_map(|id| self.corpus.get(id))
                        .cloned()
                        .collect()
                }
                Err(e) => {
                    warn!("remote search failed, using the local index: {e}");
                    flags.push("remote_fallback".into());
                }
            }
        }
        let result = search(
            &self.index,
            query,
            self.config.retrieve_depth,
            self.config.bm25,
        );
        if result.relaxed {
            flags.push("relaxed_query".into());
        }
        result
            .docs
            .iter()
            .filter_map(|d| self.corpus.get(&d.doc_id))
            .cloned()
            .collect()
    }

    /// Query formulation, search and title re-ranking.
    pub fn retrieve_documents(&self, question: &str) -> DocumentRetrieval {
        let mut flags = Vec::new();
        let query = formulate_query(question, &self.analyzer());
        let fetched = self.candidate_docs(&query, &mut flags);
        let res = &self.resources;
        let docs = rerank_documents(
            question,
            &fetched,
            &res.lexicon,
            &res.graph,
            self.config.top_docs,
        );
        if docs.is_empty() {
            flags.push("no_documents".into());
        }
        DocumentRetrieval { query, docs, flags }
    }

    /// Sentences of the retrieved documents ranked by BM25.
    pub fn retrieve_passages(
        &self,
        question: &str,
        retrieval: &DocumentRetrieval,
    ) -> Vec<ScoredPassage> {
        let docs: Vec<DocumentRecord> = retrieval
            .docs
            .iter()
            .filter_map(|d| self.corpus.get(&d.doc_id).cloned())
            .collect();
        let candidates = extract_passages(&docs, &self.resources.abbreviations);
        rank_passages(
            question,
            &candidates,
            &self.analyzer(),
            self.config.bm25,
            self.config.top_passages,
        )
    }

    pub fn answer(&self, id: &str, question: &str) -> FullAnswer {
        let qtype = self.classify(question);
        let analyzer = self.analyzer();
        let res = &self.resources;

        let retrieval = self.retrieve_documents(question);
        let supporting = self.retrieve_passages(question, &retrieval);
        let mut flags = retrieval.flags.clone();
        if supporting.is_empty() {
            flags.push("no_passages".into());
        }
        let texts: Vec<&str> = supporting.iter().map(|p| p.passage.text.as_str()).collect();

        let exact = match qtype {
            QuestionType::Yesno => {
                let v = answer_yesno(&texts, &res.sentiment, &res.tags);
                if v.empty {
                    flags.push("empty_vote".into());
                }
                Some(ExactAnswer::Yesno(v.answer))
            }
            QuestionType::Factoid => Some(answer_factoid(&texts, question, &res.lexicon)),
            QuestionType::List => Some(answer_list(
                &texts,
                question,
                &res.lexicon,
                self.config.list_cap,
            )),
            QuestionType::Summary => None,
        };
        if matches!(&exact, Some(ExactAnswer::Factoid(e) | ExactAnswer::List(e)) if e.is_empty()) {
            flags.push("no_entities".into());
        }
        let top: Vec<_> = supporting.iter().map(|p| p.passage.clone()).collect();
        let ideal = ideal_answer(question, &top, &analyzer, self.config.bm25);
        if ideal.text.is_empty() {
            flags.push("empty_ideal".into());
        }

        FullAnswer {
            id: id.to_string(),
            question: question.to_string(),
            question_type: qtype,
            exact,
            ideal,
            documents: retrieval.docs.into_iter().map(|d| d.doc_id).collect(),
            supporting,
            flags,
        }
    }
}

/// Answers one question with a loaded system; the id is derived from the text.
pub fn answer_pipeline(question: &str, system: &QaSystem) -> Result<FullAnswer> {
    if question.trim().is_empty() {
        return Err(Error::Config("empty question".into()));
    }
    Ok(system.answer(&question_id(question), question))
}

/// Stable id for ad-hoc questions: the first 12 hex digits of its SHA-256.
pub fn question_id(question: &str) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(question.trim().as_bytes()))[..12].to_string()
}
