use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::patterns::{match_patterns, pos_features, PatternSet};
use crate::textproc::{ngrams, pos_tag, tokenize, TagLexicon, TaggedToken};
use crate::{Error, Result};

/// Sparse feature counts, ordered by feature string.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureVector(BTreeMap<String, u32>);

impl FeatureVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, feature: impl Into<String>, count: u32) {
        if count > 0 {
            *self.0.entry(feature.into()).or_insert(0) += count;
        }
    }

    /// Adds counts feature-wise.
    pub fn add_all(&mut self, other: &FeatureVector) {
        for (f, &c) in &other.0 {
            self.add(f.clone(), c);
        }
    }

    /// Keeps the larger count of each feature.
    pub fn union_max(&mut self, other: &FeatureVector) {
        for (f, &c) in &other.0 {
            let e = self.0.entry(f.clone()).or_insert(0);
            *e = (*e).max(c);
        }
    }

    pub fn get(&self, feature: &str) -> u32 {
        self.0.get(feature).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(f, &c)| (f.as_str(), c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_counts<S: Into<String>>(pairs: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut fv = FeatureVector::new();
        for (f, c) in pairs {
            fv.add(f, c);
        }
        fv
    }

    pub fn as_map(&self) -> &BTreeMap<String, u32> {
        &self.0
    }
}

impl<S: Into<String>> FromIterator<S> for FeatureVector {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut fv = FeatureVector::new();
        for f in iter {
            fv.add(f, 1);
        }
        fv
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeatureSpace {
    #[serde(rename = "unigram")]
    Unigram,
    #[serde(rename = "bigram")]
    Bigram,
    #[serde(rename = "pos")]
    Pos,
    #[serde(rename = "pos+unigram")]
    PosUnigram,
    #[serde(rename = "patterns")]
    Patterns,
}

impl FeatureSpace {
    pub const ALL: [FeatureSpace; 5] = [
        FeatureSpace::Unigram,
        FeatureSpace::Bigram,
        FeatureSpace::Pos,
        FeatureSpace::PosUnigram,
        FeatureSpace::Patterns,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureSpace::Unigram => "unigram",
            FeatureSpace::Bigram => "bigram",
            FeatureSpace::Pos => "pos",
            FeatureSpace::PosUnigram => "pos+unigram",
            FeatureSpace::Patterns => "patterns",
        }
    }
}

impl fmt::Display for FeatureSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureSpace::ALL
            .into_iter()
            .find(|sp| sp.as_str() == s)
            .ok_or_else(|| Error::UnknownFeatureSpace(s.to_string()))
    }
}

/// Tagger plus pattern set: everything needed to turn question text into
/// type-classifier features.
#[derive(Debug, Clone)]
pub struct FeatureExtractor {
    pub tags: TagLexicon,
    pub patterns: PatternSet,
}

impl FeatureExtractor {
    pub fn new(tags: TagLexicon, patterns: PatternSet) -> Self {
        Self { tags, patterns }
    }

    pub fn bundled() -> Self {
        Self::new(TagLexicon::bundled(), PatternSet::bundled())
    }

    pub fn tag(&self, question: &str) -> Vec<TaggedToken> {
        pos_tag(&tokenize(question), &self.tags)
    }

    pub fn extract(&self, question: &str, space: FeatureSpace) -> FeatureVector {
        let tagged = self.tag(question);
        let surfaces: Vec<&str> = tagged.iter().map(|t| t.token.surface.as_str()).collect();
        match space {
            FeatureSpace::Unigram => FeatureVector::from_iter(surfaces),
            FeatureSpace::Bigram => FeatureVector::from_iter(ngrams(&surfaces, 2)),
            FeatureSpace::Pos => pos_features(&tagged),
            FeatureSpace::PosUnigram => {
                let mut fv = FeatureVector::from_iter(surfaces);
                fv.add_all(&pos_features(&tagged));
                fv
            }
            FeatureSpace::Patterns => match_patterns(&tagged, &self.patterns),
        }
    }

    /// Like [`extract`](Self::extract) with the space given by name.
    pub fn extract_features(&self, question: &str, space: &str) -> Result<FeatureVector> {
        Ok(self.extract(question, space.parse()?))
    }
}
