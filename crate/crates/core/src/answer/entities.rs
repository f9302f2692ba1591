use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::conceptlex::ConceptLexicon;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub name: String,
    pub cui: String,
    pub synonyms: Vec<String>,
    pub count: usize,
}

impl Entity {
    /// The name followed by its synonyms.
    pub fn names(&self) -> Vec<String> {
        std::iter::once(self.name.clone())
            .chain(self.synonyms.iter().cloned())
            .collect()
    }
}

/// Concepts mentioned in the passages but not in the question, by mention
/// count (descending) and then first occurrence.
pub fn rank_entities<S: AsRef<str>>(
    passages: &[S],
    question: &str,
    lexicon: &ConceptLexicon,
) -> Vec<Entity> {
    let excluded: HashSet<String> = lexicon.concept_ids(question).into_iter().collect();
    let mut order: Vec<String> = Vec::new();
    let mut counts: HashMap<String, usize> = HashMap::new();
    for p in passages {
        for m in lexicon.recognize(p.as_ref()) {
            if excluded.contains(&m.cui) {
                continue;
            }
            let c = counts.entry(m.cui.clone()).or_insert(0);
            if *c == 0 {
                order.push(m.cui);
            }
            *c += 1;
        }
    }
    // `order` is first-occurrence order and the sort is stable
    order.sort_by_key(|cui| std::cmp::Reverse(counts[cui]));
    order
        .into_iter()
        .filter_map(|cui| {
            let concept = lexicon.get(&cui)?;
            Some(Entity {
                name: concept.preferred.clone(),
                synonyms: lexicon.synonyms_of(&cui).ok()?,
                count: counts[&cui],
                cui,
            })
        })
        .collect()
}
