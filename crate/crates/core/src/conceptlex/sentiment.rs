use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TagClass {
    N,
    V,
    A,
    R,
    Any,
}

impl TagClass {
    /// Maps a Penn tag to its coarse class; anything else is `Any`.
    pub fn from_penn(tag: &str) -> Self {
        match crate::textproc::coarse_class(tag) {
            Some('n') => TagClass::N,
            Some('v') => TagClass::V,
            Some('a') => TagClass::A,
            Some('r') => TagClass::R,
            _ => TagClass::Any,
        }
    }
}

impl FromStr for TagClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "n" => Ok(TagClass::N),
            "v" => Ok(TagClass::V),
            "a" => Ok(TagClass::A),
            "r" => Ok(TagClass::R),
            "any" => Ok(TagClass::Any),
            other => Err(format!("unknown tag class `{other}`")),
        }
    }
}

impl fmt::Display for TagClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TagClass::N => "n",
            TagClass::V => "v",
            TagClass::A => "a",
            TagClass::R => "r",
            TagClass::Any => "any",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentEntry {
    pub word: String,
    pub tag_class: TagClass,
    pub positivity: f64,
    pub negativity: f64,
}

/// Word-level positivity/negativity scores (objectivity is `1 - pos - neg`).
#[derive(Debug, Clone, Default)]
pub struct SentimentLexicon {
    entries: HashMap<String, Vec<SentimentEntry>>,
    len: usize,
}

impl SentimentLexicon {
    /// Parses `word<TAB>tag_class<TAB>positivity<TAB>negativity`.
    pub fn parse(source_name: &str, content: &str) -> Result<Self> {
        let mut lex = Self::default();
        for (i, line) in content.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::parse(source_name, i + 1, msg);
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [word, class, pos, neg] = cols[..] else {
                return Err(err(
                    "expected `word<TAB>tag_class<TAB>positivity<TAB>negativity`".into(),
                ));
            };
            let tag_class = class.parse::<TagClass>().map_err(err)?;
            let positivity: f64 = pos
                .parse()
                .map_err(|_| err(format!("bad positivity `{pos}`")))?;
            let negativity: f64 = neg
                .parse()
                .map_err(|_| err(format!("bad negativity `{neg}`")))?;
            lex.insert(SentimentEntry {
                word: word.to_lowercase(),
                tag_class,
                positivity,
                negativity,
            })
            .map_err(|e| err(e.to_string()))?;
        }
        Ok(lex)
    }

    pub fn from_entries(entries: impl IntoIterator<Item = SentimentEntry>) -> Result<Self> {
        let mut lex = Self::default();
        for e in entries {
            lex.insert(e)?;
        }
        Ok(lex)
    }

    fn insert(&mut self, mut entry: SentimentEntry) -> Result<()> {
        let in_range = |x: f64| (0.0..=1.0).contains(&x);
        if !in_range(entry.positivity) || !in_range(entry.negativity) {
            return Err(Error::Config(format!(
                "scores for `{}` must lie in [0, 1]",
                entry.word
            )));
        }
        entry.word = entry.word.to_lowercase();
        self.entries
            .entry(entry.word.clone())
            .or_default()
            .push(entry);
        self.len += 1;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Mean of `positivity - negativity` over the entries for `word` in
    /// `class`. Without an exact class match, entries tagged `any` are used,
    /// then every entry for the word. Unknown words score 0.
    pub fn word_sentiment(&self, word: &str, class: TagClass) -> f64 {
        let Some(all) = self.entries.get(&word.to_lowercase()) else {
            return 0.0;
        };
        let of_class = |c: TagClass| all.iter().filter(move |e| e.tag_class == c);
        let chosen: Vec<&SentimentEntry> = if class == TagClass::Any {
            all.iter().collect()
        } else if of_class(class).next().is_some() {
            of_class(class).collect()
        } else if of_class(TagClass::Any).next().is_some() {
            of_class(TagClass::Any).collect()
        } else {
            all.iter().collect()
        };
        let total: f64 = chosen.iter().map(|e| e.positivity - e.negativity).sum();
        total / chosen.len() as f64
    }
}
