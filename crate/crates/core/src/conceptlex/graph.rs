use std::collections::{HashMap, VecDeque};

use super::ConceptLexicon;
use crate::{Error, Result};

/// Undirected concept hierarchy used for path-length similarity.
#[derive(Debug, Clone, Default)]
pub struct ConceptGraph {
    index: HashMap<String, usize>,
    nodes: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl ConceptGraph {
    pub fn new<I, S>(nodes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Self::default();
        for n in nodes {
            g.add_node(n.into());
        }
        g
    }

    fn add_node(&mut self, cui: String) -> usize {
        if let Some(&i) = self.index.get(&cui) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(cui.clone(), i);
        self.nodes.push(cui);
        self.adjacency.push(Vec::new());
        i
    }

    pub fn add_edge(&mut self, parent: &str, child: &str) -> Result<()> {
        let p = *self
            .index
            .get(parent)
            .ok_or_else(|| Error::UnknownConcept(parent.to_string()))?;
        let c = *self
            .index
            .get(child)
            .ok_or_else(|| Error::UnknownConcept(child.to_string()))?;
        if p == c {
            return Err(Error::Config(format!("self-loop on `{parent}`")));
        }
        if !self.adjacency[p].contains(&c) {
            self.adjacency[p].push(c);
            self.adjacency[c].push(p);
            self.edge_count += 1;
        }
        Ok(())
    }

    /// Parses a `parent_cui<TAB>child_cui` edge list over the lexicon's concepts.
    pub fn parse(source_name: &str, content: &str, lexicon: &ConceptLexicon) -> Result<Self> {
        let mut g = Self::new(lexicon.concepts().iter().map(|c| c.cui.clone()));
        for (i, line) in content.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t').map(str::trim);
            let (Some(parent), Some(child), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    "expected `parent_cui<TAB>child_cui`",
                ));
            };
            g.add_edge(parent, child).map_err(|e| match e {
                Error::UnknownConcept(cui) => Error::parse(
                    source_name,
                    i + 1,
                    format!("edge references unknown concept `{cui}`"),
                ),
                other => Error::parse(source_name, i + 1, other.to_string()),
            })?;
        }
        Ok(g)
    }

    pub fn contains(&self, cui: &str) -> bool {
        self.index.contains_key(cui)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, cui: &str) -> impl Iterator<Item = &str> {
        self.index
            .get(cui)
            .into_iter()
            .flat_map(|&i| self.adjacency[i].iter().map(|&j| self.nodes[j].as_str()))
    }

    /// Number of nodes on the shortest path, endpoints included.
    fn path_nodes(&self, from: usize, to: usize) -> Option<usize> {
        if from == to {
            return Some(1);
        }
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    if v == to {
                        return Some(dist[v] + 1);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// `1 / nodes-on-shortest-path`; `None` when the concepts are unconnected.
    pub fn path_similarity(&self, a: &str, b: &str) -> Result<Option<f64>> {
        let ia = *self
            .index
            .get(a)
            .ok_or_else(|| Error::UnknownConcept(a.to_string()))?;
        let ib = *self
            .index
            .get(b)
            .ok_or_else(|| Error::UnknownConcept(b.to_string()))?;
        Ok(self.path_nodes(ia, ib).map(|n| 1.0 / n as f64))
    }

    /// Sum of path similarities over the cross product; unconnected or unknown
    /// pairs contribute nothing.
    pub fn similarity_sum(&self, left: &[String], right: &[String]) -> f64 {
        let mut sum = 0.0;
        for a in left {
            for b in right {
                if let Ok(Some(s)) = self.path_similarity(a, b) {
                    sum += s;
                }
            }
        }
        sum
    }
}

/// Renders a similarity the way reports show it: `-1` for no relationship.
pub fn similarity_or_minus_one(sim: Option<f64>) -> f64 {
    sim.unwrap_or(-1.0)
}
