use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linear::{check_version, pegasos_binary};
use super::{BinaryModel, FeatureVector, MODEL_VERSION};
use crate::conceptlex::ConceptLexicon;
use crate::textproc::{ngrams, stem, tokenize, Stoplist};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Topic {
    Device,
    Diagnosis,
    Epidemiology,
    Etiology,
    History,
    Management,
    Pharmacological,
    #[serde(rename = "Physical Finding")]
    PhysicalFinding,
    Procedure,
    Prognosis,
    Test,
    #[serde(rename = "Treatment & Prevention")]
    TreatmentPrevention,
}

impl Topic {
    pub const ALL: [Topic; 12] = [
        Topic::Device,
        Topic::Diagnosis,
        Topic::Epidemiology,
        Topic::Etiology,
        Topic::History,
        Topic::Management,
        Topic::Pharmacological,
        Topic::PhysicalFinding,
        Topic::Procedure,
        Topic::Prognosis,
        Topic::Test,
        Topic::TreatmentPrevention,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Topic::Device => "Device",
            Topic::Diagnosis => "Diagnosis",
            Topic::Epidemiology => "Epidemiology",
            Topic::Etiology => "Etiology",
            Topic::History => "History",
            Topic::Management => "Management",
            Topic::Pharmacological => "Pharmacological",
            Topic::PhysicalFinding => "Physical Finding",
            Topic::Procedure => "Procedure",
            Topic::Prognosis => "Prognosis",
            Topic::Test => "Test",
            Topic::TreatmentPrevention => "Treatment & Prevention",
        }
    }

    fn index(self) -> u64 {
        Topic::ALL.iter().position(|&t| t == self).expect("listed") as u64
    }
}

impl fmt::Display for Topic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Topic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Topic::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown topic `{s}`")))
    }
}

/// Which feature families to extract. The default enables all five.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopicFeatureConfig {
    pub bow: bool,
    pub bob: bool,
    pub bos: bool,
    pub bocst: bool,
    pub bosdr: bool,
}

impl TopicFeatureConfig {
    pub fn none() -> Self {
        Self {
            bow: false,
            bob: false,
            bos: false,
            bocst: false,
            bosdr: false,
        }
    }
}

impl Default for TopicFeatureConfig {
    fn default() -> Self {
        Self {
            bow: true,
            bob: true,
            bos: true,
            bocst: true,
            bosdr: true,
        }
    }
}

impl FromStr for TopicFeatureConfig {
    type Err = Error;

    /// `BOW+BOB+BOS+BOCST+BOSDR`, any subset, case-insensitive; empty means none.
    fn from_str(s: &str) -> Result<Self> {
        let mut cfg = Self::none();
        for part in s.split('+').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_uppercase().as_str() {
                "BOW" => cfg.bow = true,
                "BOB" => cfg.bob = true,
                "BOS" | "BOS_PORTER" => cfg.bos = true,
                "BOCST" => cfg.bocst = true,
                "BOSDR" => cfg.bosdr = true,
                _ => {
                    return Err(Error::Config(format!(
                        "unknown topic feature family `{part}`"
                    )))
                }
            }
        }
        Ok(cfg)
    }
}

/// A precomputed dependency triple such as `nsubj(What-1, dose-4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepPair {
    pub rel: String,
    pub head: String,
    pub dependent: String,
}

/// Lowercases and drops the `-N` token index a parser appends.
fn dep_word(w: &str) -> String {
    let w = w.trim();
    let base = match w.rsplit_once('-') {
        Some((base, idx))
            if !base.is_empty() && !idx.is_empty() && idx.chars().all(|c| c.is_ascii_digit()) =>
        {
            base
        }
        _ => w,
    };
    base.to_lowercase()
}

pub fn extract_topic_features(
    question: &str,
    config: &TopicFeatureConfig,
    dep_pairs: Option<&[DepPair]>,
    stoplist: &Stoplist,
    lexicon: &ConceptLexicon,
) -> FeatureVector {
    let mut fv = FeatureVector::new();
    let words: Vec<String> = tokenize(question)
        .into_iter()
        .filter(|t| !t.is_punct())
        .map(|t| t.lower())
        .collect();
    let content: Vec<&String> = words.iter().filter(|w| !stoplist.contains(w)).collect();
    if config.bow {
        fv.add_all(&content.iter().map(|w| w.as_str()).collect());
    }
    if config.bob {
        fv.add_all(&ngrams(&words, 2).into_iter().collect());
    }
    if config.bos {
        fv.add_all(&content.iter().map(|w| stem(w)).collect());
    }
    if config.bocst {
        for m in lexicon.recognize(question) {
            fv.add(m.cui.clone(), 1);
            if let Some(c) = lexicon.get(&m.cui) {
                fv.add(c.tui.clone(), 1);
            }
        }
    }
    if config.bosdr {
        for d in dep_pairs.unwrap_or(&[]) {
            fv.add(
                format!(
                    "{}({},{})",
                    d.rel.to_lowercase(),
                    dep_word(&d.head),
                    dep_word(&d.dependent)
                ),
                1,
            );
        }
    }
    fv
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicQuestion {
    pub id: String,
    pub text: String,
    pub topics: Vec<Topic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dep_pairs: Option<Vec<DepPair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicModelSet {
    pub version: u32,
    pub config: TopicFeatureConfig,
    pub seed: u64,
    pub c: f64,
    pub models: BTreeMap<Topic, BinaryModel>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl TopicModelSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("topic models serialize")
    }

    pub fn from_json(source_name: &str, json: &str) -> Result<Self> {
        let json_err = |e: serde_json::Error| Error::Json {
            source_name: source_name.to_string(),
            message: e.to_string(),
        };
        let value: serde_json::Value = serde_json::from_str(json).map_err(json_err)?;
        check_version(&value)?;
        serde_json::from_value(value).map_err(json_err)
    }
}

const TOPIC_EPOCHS: usize = 100;

/// One balanced binary model per topic. Negatives are a uniform sample,
/// seeded with `seed + topic index`, of the questions outside the topic.
pub fn train_topic_models(
    questions: &[TopicQuestion],
    config: &TopicFeatureConfig,
    seed: u64,
    c: f64,
    stoplist: &Stoplist,
    lexicon: &ConceptLexicon,
) -> Result<TopicModelSet> {
    if questions.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Config(format!("C must be positive, got {c}")));
    }
    let vectors: Vec<FeatureVector> = questions
        .iter()
        .map(|q| extract_topic_features(&q.text, config, q.dep_pairs.as_deref(), stoplist, lexicon))
        .collect();

    let trained: Vec<(Topic, std::result::Result<BinaryModel, String>)> = Topic::ALL
        .par_iter()
        .map(|&topic| {
            let (pos, rest): (Vec<usize>, Vec<usize>) =
                (0..questions.len()).partition(|&i| questions[i].topics.contains(&topic));
            if pos.is_empty() {
                return (
                    topic,
                    Err(format!("topic {topic} has no positive examples; skipped")),
                );
            }
            let topic_seed = seed.wrapping_add(topic.index());
            let mut rng = ChaCha8Rng::seed_from_u64(topic_seed);
            let neg: Vec<usize> = rest.choose_multiple(&mut rng, pos.len()).copied().collect();
            let mut xs = Vec::with_capacity(pos.len() + neg.len());
            let mut ys = Vec::with_capacity(pos.len() + neg.len());
            for &i in &pos {
                xs.push(vectors[i].clone());
                ys.push(true);
            }
            for &i in &neg {
                xs.push(vectors[i].clone());
                ys.push(false);
            }
            (
                topic,
                Ok(pegasos_binary(&xs, &ys, c, topic_seed, TOPIC_EPOCHS)),
            )
        })
        .collect();

    let mut models = BTreeMap::new();
    let mut warnings = Vec::new();
    for (topic, result) in trained {
        match result {
            Ok(m) => {
                models.insert(topic, m);
            }
            Err(w) => {
                warn!("{w}");
                warnings.push(w);
            }
        }
    }
    Ok(TopicModelSet {
        version: MODEL_VERSION,
        config: *config,
        seed,
        c,
        models,
        warnings,
    })
}

/// Every topic whose binary score is strictly positive.
pub fn classify_topics(models: &TopicModelSet, features: &FeatureVector) -> BTreeSet<Topic> {
    models
        .models
        .iter()
        .filter(|(_, m)| m.score(features) > 0.0)
        .map(|(&t, _)| t)
        .collect()
}
