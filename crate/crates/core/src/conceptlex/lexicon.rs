use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::textproc::tokenize;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concept {
    pub cui: String,
    pub preferred: String,
    pub tui: String,
    pub semantic_type: String,
    pub synonyms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptMention {
    pub cui: String,
    pub start: usize,
    pub end: usize,
    pub matched: String,
}

/// Concept dictionary with a surface-form index for longest-match recognition.
#[derive(Debug, Clone, Default)]
pub struct ConceptLexicon {
    concepts: Vec<Concept>,
    by_cui: HashMap<String, usize>,
    /// normalized surface -> concept index; the first listed concept wins.
    surfaces: HashMap<String, usize>,
    max_span: usize,
}

/// Lowercased tokens joined by single spaces, so "Tuberous  Sclerosis" and
/// "tuberous sclerosis" share a key.
pub(crate) fn normalize_surface(s: &str) -> (String, usize) {
    let toks: Vec<String> = tokenize(s).into_iter().map(|t| t.lower()).collect();
    (toks.join(" "), toks.len())
}

impl ConceptLexicon {
    /// Parses `cui<TAB>preferred<TAB>tui<TAB>semantic_type<TAB>syn1|syn2|...`.
    pub fn parse(source_name: &str, content: &str) -> Result<Self> {
        let mut lex = Self::default();
        for (i, line) in content.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 4 || cols.len() > 5 {
                return Err(Error::parse(
                    source_name,
                    line_no,
                    "expected `cui<TAB>preferred<TAB>tui<TAB>semantic_type<TAB>synonyms`",
                ));
            }
            let synonyms = cols
                .get(4)
                .map(|s| {
                    s.split('|')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect()
                })
                .unwrap_or_default();
            let concept = Concept {
                cui: cols[0].trim().to_string(),
                preferred: cols[1].trim().to_string(),
                tui: cols[2].trim().to_string(),
                semantic_type: cols[3].trim().to_string(),
                synonyms,
            };
            if concept.cui.is_empty() || concept.preferred.is_empty() {
                return Err(Error::parse(
                    source_name,
                    line_no,
                    "cui and preferred name must be non-empty",
                ));
            }
            lex.insert(concept)
                .map_err(|e| Error::parse(source_name, line_no, e.to_string()))?;
        }
        Ok(lex)
    }

    pub fn from_concepts(concepts: impl IntoIterator<Item = Concept>) -> Result<Self> {
        let mut lex = Self::default();
        for c in concepts {
            lex.insert(c)?;
        }
        Ok(lex)
    }

    fn insert(&mut self, concept: Concept) -> Result<()> {
        if self.by_cui.contains_key(&concept.cui) {
            return Err(Error::DuplicateId { id: concept.cui });
        }
        let idx = self.concepts.len();
        for form in std::iter::once(&concept.preferred).chain(&concept.synonyms) {
            let (key, span) = normalize_surface(form);
            if span == 0 {
                continue;
            }
            self.surfaces.entry(key).or_insert(idx);
            self.max_span = self.max_span.max(span);
        }
        self.by_cui.insert(concept.cui.clone(), idx);
        self.concepts.push(concept);
        Ok(())
    }

    pub fn get(&self, cui: &str) -> Option<&Concept> {
        self.by_cui.get(cui).map(|&i| &self.concepts[i])
    }

    pub fn contains(&self, cui: &str) -> bool {
        self.by_cui.contains_key(cui)
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Greedy left-to-right longest match over token spans, case-insensitive.
    pub fn recognize(&self, text: &str) -> Vec<ConceptMention> {
        let tokens = tokenize(text);
        let lowered: Vec<String> = tokens.iter().map(|t| t.lower()).collect();
        let mut mentions = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let longest = self.max_span.min(tokens.len() - i);
            let hit = (1..=longest).rev().find_map(|len| {
                let key = lowered[i..i + len].join(" ");
                self.surfaces.get(&key).map(|&idx| (len, idx))
            });
            match hit {
                Some((len, idx)) => {
                    let (start, end) = (tokens[i].start, tokens[i + len - 1].end);
                    mentions.push(ConceptMention {
                        cui: self.concepts[idx].cui.clone(),
                        start,
                        end,
                        matched: text[start..end].to_string(),
                    });
                    i += len;
                }
                None => i += 1,
            }
        }
        mentions
    }

    /// Distinct cuis of [`Self::recognize`] in order of first mention.
    pub fn concept_ids(&self, text: &str) -> Vec<String> {
        let mut seen = std::collections::HashSet::new();
        self.recognize(text)
            .into_iter()
            .filter_map(|m| seen.insert(m.cui.clone()).then_some(m.cui))
            .collect()
    }

    /// Synonyms of a concept, preferred name excluded.
    pub fn synonyms_of(&self, cui: &str) -> Result<Vec<String>> {
        let c = self
            .get(cui)
            .ok_or_else(|| Error::UnknownConcept(cui.to_string()))?;
        let (pref, _) = normalize_surface(&c.preferred);
        Ok(c.synonyms
            .iter()
            .filter(|s| normalize_surface(s).0 != pref)
            .cloned()
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn concept(cui: &str, preferred: &str, synonyms: &[&str]) -> Concept {
        Concept {
            cui: cui.into(),
            preferred: preferred.into(),
            tui: "T000".into(),
            semantic_type: "Test".into(),
            synonyms: synonyms.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn longest_match_wins() {
        let lex = ConceptLexicon::from_concepts([
            concept("C1", "tobacco", &[]),
            concept("C2", "tobacco use disorder", &[]),
        ])
        .unwrap();
        let m = lex.recognize("tobacco use disorder");
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].cui, "C2");
        assert_eq!(m[0].matched, "tobacco use disorder");
    }

    #[test]
    fn no_match_is_empty() {
        let lex = ConceptLexicon::from_concepts([concept("C1", "tobacco", &[])]).unwrap();
        assert!(lex.recognize("xyzzy frobnicate").is_empty());
    }

    #[test]
    fn first_listed_entry_breaks_ties() {
        let lex = ConceptLexicon::from_concepts([
            concept("C1", "cold", &[]),
            concept("C2", "common cold", &["cold"]),
        ])
        .unwrap();
        assert_eq!(lex.recognize("a cold")[0].cui, "C1");
        assert_eq!(lex.recognize("the common cold")[0].cui, "C2");
    }

    #[test]
    fn case_insensitive_with_offsets() {
        let lex =
            ConceptLexicon::from_concepts([concept("C1", "Tuberous Sclerosis", &["TSC"])]).unwrap();
        let text = "Is TUBEROUS sclerosis (tsc) genetic?";
        let m = lex.recognize(text);
        assert_eq!(m.len(), 2);
        assert_eq!(&text[m[0].start..m[0].end], "TUBEROUS sclerosis");
        assert_eq!(m[1].matched, "tsc");
    }

    #[test]
    fn synonyms_exclude_preferred() {
        let lex = ConceptLexicon::from_concepts([
            concept(
                "C1",
                "Tuberous Sclerosis",
                &["TSC", "tuberous sclerosis", "Bourneville disease"],
            ),
            concept("C2", "Imatinib", &[]),
        ])
        .unwrap();
        assert_eq!(
            lex.synonyms_of("C1").unwrap(),
            ["TSC", "Bourneville disease"]
        );
        assert!(lex.synonyms_of("C2").unwrap().is_empty());
        assert!(matches!(lex.synonyms_of("C9"), Err(Error::UnknownConcept(c)) if c == "C9"));
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = ConceptLexicon::parse("lex.tsv", "C1\tA\tT1\tX\t\nC1\tB\tT1\tX\t\n").unwrap_err();
        assert!(err.to_string().starts_with("lex.tsv:2"), "{err}");
        let err = ConceptLexicon::parse("lex.tsv", "C1\tA\n").unwrap_err();
        assert!(err.to_string().starts_with("lex.tsv:1"), "{err}");
    }
}
