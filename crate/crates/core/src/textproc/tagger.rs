use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Token;
use crate::{Error, Result};

const BUNDLED_TAGS: &str = include_str!("../../data/tags.tsv");

/// The closed Penn-style tag inventory. Lexicon files may only use these.
pub const TAG_INVENTORY: &[&str] = &[
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "MD", "NN", "NNS", "NNP", "NNPS",
    "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "TO", "UH", "VB", "VBD", "VBG", "VBN",
    "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", ".", ",", ":", "-LRB-", "-RRB-", "''", "``", "SYM",
];

pub fn is_known_tag(tag: &str) -> bool {
    TAG_INVENTORY.contains(&tag)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub token: Token,
    pub tag: String,
}

/// Word-to-tag lexicon backing [`pos_tag`]. Lookup is case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct TagLexicon {
    entries: HashMap<String, String>,
}

impl TagLexicon {
    /// Parses `word<TAB>tag` lines; `#` starts a comment line.
    pub fn parse(source_name: &str, content: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (i, line) in content.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let (Some(word), Some(tag), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(Error::parse(source_name, i + 1, "expected `word<TAB>tag`"));
            };
            let tag = tag.trim();
            if !is_known_tag(tag) {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    format!("unknown tag `{tag}`"),
                ));
            }
            entries.insert(word.trim().to_lowercase(), tag.to_string());
        }
        Ok(Self { entries })
    }

    pub fn bundled() -> Self {
        Self::parse("tags.tsv", BUNDLED_TAGS).expect("bundled tag lexicon parses")
    }

    pub fn get(&self, word: &str) -> Option<&str> {
        self.entries.get(&word.to_lowercase()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn is_verb_base(&self, word: &str) -> bool {
        matches!(self.get(word), Some("VB" | "VBP"))
    }
}

fn punct_tag(surface: &str) -> &'static str {
    match surface {
        "." | "?" | "!" => ".",
        "," => ",",
        ":" | ";" => ":",
        "(" | "[" => "-LRB-",
        ")" | "]" => "-RRB-",
        "\"" | "”" => "''",
        "“" => "``",
        _ => "SYM",
    }
}

fn is_number(s: &str) -> bool {
    let mut digits = false;
    for c in s.chars() {
        match c {
            '0'..='9' => digits = true,
            '.' | ',' | '%' | '-' | '+' => {}
            _ => return false,
        }
    }
    digits
}

/// Lexicon lookup first, then suffix and shape heuristics, then `NN`.
pub fn pos_tag(tokens: &[Token], lexicon: &TagLexicon) -> Vec<TaggedToken> {
    let mut out: Vec<TaggedToken> = Vec::with_capacity(tokens.len());
    for (i, token) in tokens.iter().enumerate() {
        let prev = out.last().map(|t| t.tag.as_str());
        let tag = tag_one(token, i, prev, lexicon);
        out.push(TaggedToken {
            token: token.clone(),
            tag: tag.to_string(),
        });
    }
    out
}

fn tag_one<'a>(
    token: &Token,
    index: usize,
    prev: Option<&str>,
    lexicon: &'a TagLexicon,
) -> &'a str {
    let surface = token.surface.as_str();
    if token.is_punct() {
        return punct_tag(surface);
    }
    if let Some(tag) = lexicon.get(surface) {
        return tag;
    }
    if is_number(surface) {
        return "CD";
    }
    let lower = surface.to_lowercase();
    if surface.contains('-') && surface.starts_with(|c: char| c.is_ascii_digit()) {
        return "JJ";
    }
    let has_upper = surface.chars().any(char::is_uppercase);
    if has_upper && index > 0 {
        // acronym plurals such as SNPs or miRNAs
        let mut rev = surface.chars().rev();
        if rev.next() == Some('s') && rev.next().is_some_and(char::is_uppercase) {
            return "NNS";
        }
        return "NNP";
    }
    if let Some(base) = lower.strip_suffix('s') {
        let es_base = lower.strip_suffix("es");
        if lexicon.is_verb_base(base) || es_base.is_some_and(|b| lexicon.is_verb_base(b)) {
            return "VBZ";
        }
    }
    if lower.len() > 4 && lower.ends_with("ing") {
        return "VBG";
    }
    if lower.len() > 3 && lower.ends_with("ed") {
        let after_aux = matches!(
            prev,
            Some("VBZ" | "VBP" | "VBD" | "VBN" | "VB" | "MD" | "RB")
        );
        return if after_aux { "VBN" } else { "VBD" };
    }
    if lower.len() > 4 && lower.ends_with("ly") {
        return "RB";
    }
    if lower.len() > 3
        && lower.ends_with('s')
        && !(lower.ends_with("ss") || lower.ends_with("us") || lower.ends_with("is"))
    {
        return "NNS";
    }
    "NN"
}

/// Coarse word class used by the sentiment lexicon.
pub fn coarse_class(tag: &str) -> Option<char> {
    if tag.starts_with("NN") {
        Some('n')
    } else if tag.starts_with("VB") || tag == "MD" {
        Some('v')
    } else if tag.starts_with("JJ") {
        Some('a')
    } else if tag.starts_with("RB") {
        Some('r')
    } else {
        None
    }
}
