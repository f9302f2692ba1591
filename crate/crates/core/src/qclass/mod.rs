//! Question type and topic classification.
//!
//! Type classification runs hand-written lexico-syntactic patterns over the
//! tagged question and feeds the emitted features to a linear multiclass
//! model. Topic classification uses one binary linear model per topic over a
//! combination of word, bigram, stem, concept and dependency features.

mod features;
mod linear;
mod patterns;
mod topics;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use features::{FeatureExtractor, FeatureSpace, FeatureVector};
pub use linear::{
    classify_type, train_type_classifier, BinaryModel, LabeledQuestion, LinearModel, TrainingMeta,
    TypeTrainConfig, MODEL_VERSION,
};
pub use patterns::{match_patterns, Element, Pattern, PatternSet};
pub use topics::{
    classify_topics, extract_topic_features, train_topic_models, DepPair, Topic,
    TopicFeatureConfig, TopicModelSet, TopicQuestion,
};

/// The four question categories. The declaration order is the argmax tie order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuestionType {
    Yesno,
    Factoid,
    List,
    Summary,
}

impl QuestionType {
    pub const ALL: [QuestionType; 4] = [
        QuestionType::Yesno,
        QuestionType::Factoid,
        QuestionType::List,
        QuestionType::Summary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QuestionType::Yesno => "yesno",
            QuestionType::Factoid => "factoid",
            QuestionType::List => "list",
            QuestionType::Summary => "summary",
        }
    }
}

impl fmt::Display for QuestionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuestionType::Yesno => "YESNO",
            QuestionType::Factoid => "FACTOID",
            QuestionType::List => "LIST",
            QuestionType::Summary => "SUMMARY",
        })
    }
}

impl FromStr for QuestionType {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().replace(['/', '-', '_'], "").as_str() {
            "yesno" => Ok(QuestionType::Yesno),
            "factoid" => Ok(QuestionType::Factoid),
            "list" => Ok(QuestionType::List),
            "summary" => Ok(QuestionType::Summary),
            _ => Err(crate::Error::Config(format!("unknown question type `{s}`"))),
        }
    }
}
