use std::fs;
use std::path::Path;

use super::{bundled_questions, read_file};
use crate::qclass::{
    train_type_classifier, FeatureExtractor, LinearModel, TopicModelSet, TypeTrainConfig,
};
use crate::retrieval::{IndexedCorpus, INDEX_VERSION};
use crate::{Error, Result};

const BUNDLED_TYPE_TRAIN: &str = include_str!("../../data/type_train.json");

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::io(path, e))
}

/// Writes pretty JSON. Postings are ordered maps, so equal indexes give equal bytes.
pub fn save_index(path: impl AsRef<Path>, index: &IndexedCorpus) -> Result<()> {
    let json = serde_json::to_string_pretty(index).expect("index serializes");
    write_file(path.as_ref(), &(json + "\n"))
}

pub fn load_index(path: impl AsRef<Path>) -> Result<IndexedCorpus> {
    let path = path.as_ref();
    let source_name = path.display().to_string();
    let json_err = |e: serde_json::Error| Error::Json {
        source_name: source_name.clone(),
        message: e.to_string(),
    };
    let value: serde_json::Value = serde_json::from_str(&read_file(path)?).map_err(json_err)?;
    let found = value.get("version").and_then(|v| v.as_u64()).unwrap_or(0);
    if found != u64::from(INDEX_VERSION) {
        return Err(Error::VersionMismatch {
            expected: INDEX_VERSION,
            found: u32::try_from(found).unwrap_or(u32::MAX),
        });
    }
    let mut index: IndexedCorpus = serde_json::from_value(value).map_err(json_err)?;
    check_index(&index).map_err(|m| Error::Json {
        source_name: source_name.clone(),
        message: m,
    })?;
    index.rebuild_lookup();
    Ok(index)
}

fn check_index(index: &IndexedCorpus) -> std::result::Result<(), String> {
    if index.n != index.units.len() {
        return Err(format!(
            "n = {} but {} units are listed",
            index.n,
            index.units.len()
        ));
    }
    let mut ids = std::collections::HashSet::new();
    if let Some(u) = index.units.iter().find(|u| !ids.insert(u.id.as_str())) {
        return Err(format!("duplicate unit `{}`", u.id));
    }
    for (term, postings) in &index.postings {
        let ordered = postings.windows(2).all(|w| w[0].0 < w[1].0);
        let in_range = postings.iter().all(|&(o, f)| o < index.n && f > 0);
        if !ordered || !in_range || postings.is_empty() {
            return Err(format!("corrupt postings for `{term}`"));
        }
    }
    Ok(())
}

pub fn save_type_model(path: impl AsRef<Path>, model: &LinearModel) -> Result<()> {
    write_file(path.as_ref(), &(model.to_json() + "\n"))
}

pub fn load_type_model(path: impl AsRef<Path>) -> Result<LinearModel> {
    let path = path.as_ref();
    LinearModel::from_json(&path.display().to_string(), &read_file(path)?)
}

pub fn save_topic_models(path: impl AsRef<Path>, models: &TopicModelSet) -> Result<()> {
    write_file(path.as_ref(), &(models.to_json() + "\n"))
}

pub fn load_topic_models(path: impl AsRef<Path>) -> Result<TopicModelSet> {
    let path = path.as_ref();
    TopicModelSet::from_json(&path.display().to_string(), &read_file(path)?)
}

/// Patterns-space model trained with default settings on the bundled
/// type-training set merged with the bundled evaluation questions.
pub fn bundled_type_model() -> LinearModel {
    let mut examples = super::parse_questions("type_train.json", BUNDLED_TYPE_TRAIN)
        .expect("bundled training set parses")
        .labeled();
    examples.extend(bundled_questions().labeled());
    train_type_classifier(
        &examples,
        &FeatureExtractor::bundled(),
        &TypeTrainConfig::default(),
    )
    .expect("bundled training set trains")
}
