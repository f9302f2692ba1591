//! Loaders and persistence. Everything that reads a file validates it here so
//! the rest of the crate works with checked values.

mod datasets;
mod persist;
mod resources;

use std::fs;
use std::path::Path;

use crate::retrieval::DocumentRecord;
use crate::{Error, Result};

pub use datasets::{
    bundled_questions, load_dependencies, load_questions, load_topic_questions, parse_dependencies,
    parse_questions, parse_topic_questions, ExactPayload, QuestionDataset, QuestionRecord,
    SnippetRecord, TopicDataset,
};
pub use persist::{
    bundled_type_model, load_index, load_topic_models, load_type_model, save_index,
    save_topic_models, save_type_model,
};
pub use resources::{
    load_manifest, load_resources, load_resources_from, sha256_hex, Manifest, ResourceBundle,
    ResourceFile,
};

pub(crate) const BUNDLED_CORPUS: &str = include_str!("../../data/corpus.jsonl");

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Parses JSON Lines documents; blank lines are skipped. Errors carry the line number.
pub fn parse_corpus(source_name: &str, content: &str) -> Result<Vec<DocumentRecord>> {
    let mut docs: Vec<DocumentRecord> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let doc: DocumentRecord = serde_json::from_str(line)
            .map_err(|e| Error::parse(source_name, i + 1, e.to_string()))?;
        if doc.doc_id.trim().is_empty() {
            return Err(Error::parse(source_name, i + 1, "empty doc_id"));
        }
        if let Some(first) = seen.insert(doc.doc_id.clone(), i + 1) {
            return Err(Error::parse(
                source_name,
                i + 1,
                format!("duplicate doc_id `{}` (first on line {first})", doc.doc_id),
            ));
        }
        docs.push(doc);
    }
    Ok(docs)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<DocumentRecord>> {
    let path = path.as_ref();
    parse_corpus(&path.display().to_string(), &read_file(path)?)
}

/// The 12-abstract corpus shipped in `data/corpus.jsonl`.
pub fn bundled_corpus() -> Vec<DocumentRecord> {
    parse_corpus("corpus.jsonl", BUNDLED_CORPUS).expect("bundled corpus parses")
}
