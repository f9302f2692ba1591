//! Shallow, deterministic text processing shared by every pipeline stage.

mod porter;
mod sentences;
mod tagger;
mod tokenize;

use std::collections::HashSet;

pub use porter::stem;
pub use sentences::{split_sentences, Abbreviations, Sentence};
pub use tagger::{coarse_class, is_known_tag, pos_tag, TagLexicon, TaggedToken, TAG_INVENTORY};
pub use tokenize::{tokenize, Token};

use crate::{Error, Result};

const BUNDLED_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// Sliding window of `n` items joined with `-`. `n == 0` yields nothing.
pub fn ngrams<S: AsRef<str>>(tokens: &[S], n: usize) -> Vec<String> {
    if n == 0 || tokens.len() < n {
        return Vec::new();
    }
    tokens
        .windows(n)
        .map(|w| w.iter().map(AsRef::as_ref).collect::<Vec<_>>().join("-"))
        .collect()
}

/// Lowercase stopword set.
#[derive(Debug, Clone, Default)]
pub struct Stoplist {
    words: HashSet<String>,
}

impl Stoplist {
    pub fn parse(source_name: &str, content: &str) -> Result<Self> {
        let mut words = HashSet::new();
        for (i, line) in content.lines().enumerate() {
            let w = line.trim();
            if w.is_empty() || w.starts_with('#') {
                continue;
            }
            if w.chars().any(char::is_whitespace) || w != w.to_lowercase() {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    format!("stopword `{w}` must be a single lowercase word"),
                ));
            }
            words.insert(w.to_string());
        }
        Ok(Self { words })
    }

    pub fn bundled() -> Self {
        Self::parse("stopwords.txt", BUNDLED_STOPWORDS).expect("bundled stoplist parses")
    }

    pub fn from_words<I: IntoIterator<Item = S>, S: Into<String>>(words: I) -> Self {
        Self {
            words: words.into_iter().map(|w| w.into().to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Case-insensitive stopword filter; surviving items keep their original form.
pub fn remove_stopwords<S: AsRef<str> + Clone>(tokens: &[S], stoplist: &Stoplist) -> Vec<S> {
    tokens
        .iter()
        .filter(|t| !stoplist.contains(t.as_ref()))
        .cloned()
        .collect()
}

/// Lowercased, stopword-free, punctuation-free word tokens.
pub fn content_words(text: &str, stoplist: &Stoplist) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| !t.is_punct())
        .map(|t| t.lower())
        .filter(|w| !stoplist.contains(w))
        .collect()
}
