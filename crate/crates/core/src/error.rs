use std::path::PathBuf;

use crate::qclass::QuestionType;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A line-oriented resource or data file failed to parse.
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("invalid json in {source_name}: {message}")]
    Json {
        source_name: String,
        message: String,
    },

    #[error("unknown concept `{0}`")]
    UnknownConcept(String),

    #[error("unknown feature space `{0}`")]
    UnknownFeatureSpace(String),

    #[error("class {0} has no training examples")]
    EmptyClass(QuestionType),

    #[error("no training examples")]
    EmptyTrainingSet,

    #[error("duplicate id `{id}`")]
    DuplicateId { id: String },

    #[error("unknown unit `{0}`")]
    UnknownUnit(String),

    #[error("malformed xml at byte {offset}: {message}")]
    MalformedXml { offset: usize, message: String },

    #[error("index version mismatch: expected {expected}, found {found}")]
    VersionMismatch { expected: u32, found: u32 },

    #[error("model feature space `{model}` does not match requested `{requested}`")]
    SpaceMismatch { model: String, requested: String },

    #[error("length mismatch: {left} predictions vs {right} gold labels")]
    LengthMismatch { left: usize, right: usize },

    #[error("gold set is empty")]
    EmptyGold,

    #[error("no runs to average")]
    EmptyRuns,

    #[error("run references unknown question ids: {}", .0.join(", "))]
    UnknownQuestionIds(Vec<String>),

    #[error("unresolved synonym set `@{0}`")]
    UnresolvedSynonymSet(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(
        source_name: impl Into<String>,
        line: usize,
        message: impl Into<String>,
    ) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
