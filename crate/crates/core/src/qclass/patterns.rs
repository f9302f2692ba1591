use std::collections::{BTreeMap, HashMap};

use super::{FeatureVector, QuestionType};
use crate::textproc::{is_known_tag, TaggedToken};
use crate::{Error, Result};

const BUNDLED_PATTERNS: &str = include_str!("../../data/patterns.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    /// Alternatives, each a sequence of lowercase words.
    Words(Vec<Vec<String>>),
    /// Matches a token whose tag starts with any listed symbol (so `NN` also
    /// covers `NNS`/`NNP`); emits the symbol.
    Tags(Vec<String>),
    /// Any single token; emits that token's tag.
    AnyTag,
    /// Zero or more tokens; emits nothing.
    Star,
    /// A literal `?` token; emits nothing.
    QuestionMark,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub category: QuestionType,
    pub anchored: bool,
    pub elements: Vec<Element>,
    pub source: String,
}

impl Pattern {
    /// Parses one pattern body such as `[what|which] + [VBZ] + [*] + [@DEFN] + [*] + ?`.
    pub fn parse(
        category: QuestionType,
        body: &str,
        sets: &HashMap<String, Vec<String>>,
    ) -> Result<Self> {
        let mut elements = Vec::new();
        let mut anchored = false;
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                c if c.is_whitespace() || c == '+' => i += 1,
                '^' if elements.is_empty() && !anchored => {
                    anchored = true;
                    i += 1;
                }
                '?' => {
                    elements.push(Element::QuestionMark);
                    i += 1;
                }
                '*' => {
                    elements.push(Element::Star);
                    i += 1;
                }
                '[' => {
                    let close = chars[i..].iter().position(|&c| c == ']').ok_or_else(|| {
                        Error::Config(format!("unclosed `[` in pattern `{body}`"))
                    })?;
                    let inner: String = chars[i + 1..i + close].iter().collect();
                    elements.push(parse_bracket(inner.trim(), sets)?);
                    i += close + 1;
                }
                '@' => {
                    let name: String = chars[i + 1..]
                        .iter()
                        .take_while(|c| c.is_alphanumeric() || **c == '_')
                        .collect();
                    i += 1 + name.chars().count();
                    elements.push(parse_bracket(&format!("@{name}"), sets)?);
                }
                other => {
                    return Err(Error::Config(format!(
                        "unexpected `{other}` in pattern `{body}`"
                    )))
                }
            }
        }
        if elements.is_empty() {
            return Err(Error::Config("pattern has no elements".into()));
        }
        Ok(Pattern {
            category,
            anchored,
            elements,
            source: body.trim().to_string(),
        })
    }

    /// Leftmost match, shifting right one token at a time. Returns the
    /// features emitted by the matched elements.
    pub fn find(&self, tokens: &[TaggedToken]) -> Option<Vec<String>> {
        let last_start = if self.anchored { 0 } else { tokens.len() };
        (0..=last_start).find_map(|start| {
            let mut emitted = Vec::new();
            match_at(&self.elements, tokens, start, &mut emitted).then_some(emitted)
        })
    }
}

fn parse_bracket(inner: &str, sets: &HashMap<String, Vec<String>>) -> Result<Element> {
    match inner {
        "*" | ".*" => return Ok(Element::Star),
        "TAG" => return Ok(Element::AnyTag),
        "?" => return Ok(Element::QuestionMark),
        _ => {}
    }
    let mut words = Vec::new();
    let mut tags = Vec::new();
    for alt in inner.split('|').map(str::trim).filter(|a| !a.is_empty()) {
        if let Some(name) = alt.strip_prefix('@') {
            let set = sets
                .get(name)
                .ok_or_else(|| Error::UnresolvedSynonymSet(name.to_string()))?;
            words.extend(set.iter().map(|w| split_words(w)));
        } else if is_known_tag(alt) && alt.chars().any(|c| c.is_ascii_uppercase()) {
            tags.push(alt.to_string());
        } else {
            words.push(split_words(alt));
        }
    }
    match (words.is_empty(), tags.is_empty()) {
        (false, true) => Ok(Element::Words(words)),
        (true, false) => Ok(Element::Tags(tags)),
        (true, true) => Err(Error::Config(format!("empty element `[{inner}]`"))),
        (false, false) => Err(Error::Config(format!(
            "element `[{inner}]` mixes words and tags"
        ))),
    }
}

fn split_words(alt: &str) -> Vec<String> {
    alt.split_whitespace().map(str::to_lowercase).collect()
}

fn match_at(
    elements: &[Element],
    tokens: &[TaggedToken],
    pos: usize,
    emitted: &mut Vec<String>,
) -> bool {
    let Some((first, rest)) = elements.split_first() else {
        return true;
    };
    let mark = emitted.len();
    match first {
        Element::Star => {
            // shortest run first
            for skip in 0..=tokens.len().saturating_sub(pos) {
                if match_at(rest, tokens, pos + skip, emitted) {
                    return true;
                }
                emitted.truncate(mark);
            }
            false
        }
        Element::Words(alts) => {
            for alt in alts {
                let end = pos + alt.len();
                if end <= tokens.len()
                    && alt
                        .iter()
                        .zip(&tokens[pos..end])
                        .all(|(w, t)| t.token.surface.to_lowercase() == *w)
                {
                    emitted.push(alt.join(" "));
                    if match_at(rest, tokens, end, emitted) {
                        return true;
                    }
                    emitted.truncate(mark);
                }
            }
            false
        }
        Element::Tags(syms) => {
            let Some(tok) = tokens.get(pos) else {
                return false;
            };
            let Some(sym) = syms.iter().find(|s| tok.tag.starts_with(s.as_str())) else {
                return false;
            };
            emitted.push(sym.clone());
            match_at(rest, tokens, pos + 1, emitted) || {
                emitted.truncate(mark);
                false
            }
        }
        Element::AnyTag => {
            let Some(tok) = tokens.get(pos) else {
                return false;
            };
            emitted.push(tok.tag.clone());
            match_at(rest, tokens, pos + 1, emitted) || {
                emitted.truncate(mark);
                false
            }
        }
        Element::QuestionMark => {
            tokens.get(pos).is_some_and(|t| t.token.surface == "?")
                && match_at(rest, tokens, pos + 1, emitted)
        }
    }
}

/// Patterns grouped by category plus the synonym sets they were resolved against.
#[derive(Debug, Clone, Default)]
pub struct PatternSet {
    pub patterns: Vec<Pattern>,
    pub synonym_sets: BTreeMap<String, Vec<String>>,
}

impl PatternSet {
    /// Parses the pattern DSL:
    ///
    /// ```text
    /// @DEFN = definition|role|aim
    /// SUMMARY := [what|which] [VBZ] [*] [@DEFN] [*] ?
    /// YESNO := ^ [is|are|can] [*] ?
    /// ```
    ///
    /// Set definitions may appear anywhere in the file.
    pub fn parse(source_name: &str, content: &str) -> Result<Self> {
        let mut sets = HashMap::new();
        let mut bodies = Vec::new();
        for (i, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(def) = line.strip_prefix('@') {
                let (name, words) = def.split_once('=').ok_or_else(|| {
                    Error::parse(source_name, i + 1, "expected `@NAME = w1|w2|...`")
                })?;
                let words: Vec<String> = words
                    .split('|')
                    .map(|w| w.trim().to_lowercase())
                    .filter(|w| !w.is_empty())
                    .collect();
                sets.insert(name.trim().to_string(), words);
            } else if let Some((cat, body)) = line.split_once(":=") {
                let category: QuestionType = cat
                    .trim()
                    .parse()
                    .map_err(|e: Error| Error::parse(source_name, i + 1, e.to_string()))?;
                bodies.push((i + 1, category, body.to_string()));
            } else {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    "expected `CATEGORY := pattern` or `@SET = ...`",
                ));
            }
        }
        let mut patterns = Vec::with_capacity(bodies.len());
        for (line, category, body) in bodies {
            let p = Pattern::parse(category, &body, &sets).map_err(|e| match e {
                Error::UnresolvedSynonymSet(_) => e,
                other => Error::parse(source_name, line, other.to_string()),
            })?;
            patterns.push(p);
        }
        Ok(PatternSet {
            patterns,
            synonym_sets: sets.into_iter().collect(),
        })
    }

    pub fn bundled() -> Self {
        Self::parse("patterns.txt", BUNDLED_PATTERNS).expect("bundled patterns parse")
    }

    pub fn of_category(&self, category: QuestionType) -> impl Iterator<Item = &Pattern> {
        self.patterns.iter().filter(move |p| p.category == category)
    }
}

/// Runs every pattern over the tagged question. Each matching pattern
/// contributes the features of its matched elements; across patterns a
/// feature keeps its largest count. With no match at all the question falls
/// back to its unigrams and POS tags.
pub fn match_patterns(tagged: &[TaggedToken], patterns: &PatternSet) -> FeatureVector {
    let mut out = FeatureVector::new();
    let mut any = false;
    for p in &patterns.patterns {
        if let Some(emitted) = p.find(tagged) {
            any = true;
            out.union_max(&FeatureVector::from_iter(emitted));
        }
    }
    if !any {
        out = FeatureVector::from_iter(tagged.iter().map(|t| t.token.surface.clone()));
        out.add_all(&pos_features(tagged));
    }
    out
}

pub(crate) fn pos_features(tagged: &[TaggedToken]) -> FeatureVector {
    FeatureVector::from_iter(
        tagged
            .iter()
            .filter(|t| !t.token.is_punct())
            .map(|t| t.tag.clone()),
    )
}
