use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const BUNDLED_ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

/// Abbreviations (with their trailing period) after which a period does not end
/// a sentence. Matching is case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct Abbreviations {
    entries: HashSet<String>,
}

impl Abbreviations {
    pub fn parse(source_name: &str, content: &str) -> Result<Self> {
        let mut entries = HashSet::new();
        for (i, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !line.ends_with('.') || line.chars().any(char::is_whitespace) {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    format!("abbreviation `{line}` must be one word ending in a period"),
                ));
            }
            entries.insert(line.to_lowercase());
        }
        Ok(Self { entries })
    }

    pub fn bundled() -> Self {
        Self::parse("abbreviations.txt", BUNDLED_ABBREVIATIONS)
            .expect("bundled abbreviations parse")
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '”' | '’')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '“' | '‘')
}

/// Splits at `.`, `!` or `?` (optionally followed by closing quotes/brackets)
/// when whitespace and then an uppercase letter or digit follow, unless the
/// word carrying the period is a listed abbreviation.
pub fn split_sentences(text: &str, abbreviations: &Abbreviations) -> Vec<Sentence> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut cuts = Vec::new();

    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        if !matches!(c, '.' | '!' | '?') {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() && (is_closer(chars[j].1) || matches!(chars[j].1, '.' | '!' | '?')) {
            j += 1;
        }
        let boundary_end = chars.get(j).map_or(text.len(), |&(o, _)| o);
        let mut k = j;
        while k < chars.len() && chars[k].1.is_whitespace() {
            k += 1;
        }
        let starts_new = k > j
            && chars.get(k).is_some_and(|&(_, n)| {
                n.is_uppercase()
                    || n.is_ascii_digit()
                    || (is_opener(n) && next_starts_upper(&chars, k))
            });
        if starts_new && !(c == '.' && ends_with_abbreviation(text, off, abbreviations)) {
            cuts.push(boundary_end);
        }
        i = j.max(i + 1);
    }
    cuts.push(text.len());

    let mut sentences = Vec::new();
    let mut prev = 0;
    for cut in cuts {
        let piece = &text[prev..cut];
        let lead = piece.len() - piece.trim_start().len();
        let trimmed = piece.trim();
        if !trimmed.is_empty() {
            let start = prev + lead;
            sentences.push(Sentence {
                text: trimmed.to_string(),
                start,
                end: start + trimmed.len(),
            });
        }
        prev = cut;
    }
    sentences
}

fn next_starts_upper(chars: &[(usize, char)], k: usize) -> bool {
    chars[k + 1..]
        .iter()
        .find(|(_, c)| !is_opener(*c))
        .is_some_and(|&(_, c)| c.is_uppercase() || c.is_ascii_digit())
}

/// `period` is the byte offset of a `.`; the word is everything back to the
/// previous whitespace, minus opening brackets and quotes.
fn ends_with_abbreviation(text: &str, period: usize, abbreviations: &Abbreviations) -> bool {
    let head = &text[..period + 1];
    let word_start = head
        .char_indices()
        .rev()
        .find(|(_, c)| c.is_whitespace())
        .map_or(0, |(o, c)| o + c.len_utf8());
    let word = head[word_start..].trim_start_matches(is_opener);
    abbreviations.contains(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(text: &str) -> Vec<String> {
        split_sentences(text, &Abbreviations::bundled())
            .into_iter()
            .map(|s| s.text)
            .collect()
    }

    #[test]
    fn single_sentence_without_terminator() {
        assert_eq!(texts("One sentence only"), ["One sentence only"]);
    }

    #[test]
    fn abbreviation_does_not_split() {
        assert_eq!(
            texts("Mutation in FGFR3 (e.g. P250R) is causal. It is dominant."),
            [
                "Mutation in FGFR3 (e.g. P250R) is causal.",
                "It is dominant."
            ]
        );
    }

    #[test]
    fn lowercase_continuation_does_not_split() {
        assert_eq!(
            texts("Levels were 1. mg per dose. Then it rose."),
            ["Levels were 1. mg per dose.", "Then it rose."]
        );
    }

    #[test]
    fn closing_quote_and_digit_start() {
        assert_eq!(
            texts("He said \"stop.\" 3 patients died? Yes!"),
            ["He said \"stop.\"", "3 patients died?", "Yes!"]
        );
    }

    #[test]
    fn offsets_match_source() {
        let text = "  First one.  Second (Fig. 2) one!\nThird.";
        let sents = split_sentences(text, &Abbreviations::bundled());
        assert_eq!(sents.len(), 3);
        for s in sents {
            assert_eq!(&text[s.start..s.end], s.text);
        }
    }

    #[test]
    fn rejects_malformed_abbreviation_line() {
        let err = Abbreviations::parse("abbr.txt", "e.g.\nbad entry\n").unwrap_err();
        assert!(err.to_string().contains("abbr.txt:2"), "{err}");
    }
}
