use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::read_file;
use crate::conceptlex::{ConceptGraph, ConceptLexicon, SentimentLexicon};
use crate::qclass::PatternSet;
use crate::retrieval::TermAnalyzer;
use crate::textproc::{Abbreviations, Stoplist, TagLexicon};
use crate::{Error, Result};

const LEXICON: &str = include_str!("../../data/lexicon.tsv");
const HIERARCHY: &str = include_str!("../../data/hierarchy.tsv");
const SENTIMENT: &str = include_str!("../../data/sentiment.tsv");
const STOPWORDS: &str = include_str!("../../data/stopwords.txt");
const TAGS: &str = include_str!("../../data/tags.tsv");
const ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");
const PATTERNS: &str = include_str!("../../data/patterns.txt");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Resource paths, relative to the manifest's directory unless absolute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<PathBuf>,
    pub lexicon: PathBuf,
    pub graph: PathBuf,
    pub sentiment: PathBuf,
    pub stopwords: PathBuf,
    pub tags: PathBuf,
    pub abbreviations: PathBuf,
    pub patterns: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic_model: Option<PathBuf>,
    /// Expected SHA-256 per resource name; a mismatch fails loading.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hashes: BTreeMap<String, String>,
    #[serde(skip)]
    pub base: PathBuf,
}

impl Manifest {
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    pub fn corpus_path(&self) -> Option<PathBuf> {
        self.corpus.as_deref().map(|p| self.resolve(p))
    }

    pub fn model_path(&self) -> Option<PathBuf> {
        self.model.as_deref().map(|p| self.resolve(p))
    }

    pub fn topic_model_path(&self) -> Option<PathBuf> {
        self.topic_model.as_deref().map(|p| self.resolve(p))
    }

    fn resources(&self) -> [(&'static str, &Path); 7] {
        [
            ("lexicon", &self.lexicon),
            ("graph", &self.graph),
            ("sentiment", &self.sentiment),
            ("stopwords", &self.stopwords),
            ("tags", &self.tags),
            ("abbreviations", &self.abbreviations),
            ("patterns", &self.patterns),
        ]
    }
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Manifest> {
    let path = path.as_ref();
    let mut m: Manifest = serde_json::from_str(&read_file(path)?).map_err(|e| Error::Json {
        source_name: path.display().to_string(),
        message: e.to_string(),
    })?;
    m.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    if let Some(name) = m
        .hashes
        .keys()
        .find(|k| !m.resources().iter().any(|(n, _)| n == k))
    {
        return Err(Error::Config(format!(
            "manifest pins a hash for unknown resource `{name}`"
        )));
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceFile {
    pub name: String,
    pub path: PathBuf,
    pub sha256: String,
}

/// Every lexical resource the pipeline reads, parsed and cross-checked.
#[derive(Debug, Clone)]
pub struct ResourceBundle {
    pub lexicon: ConceptLexicon,
    pub graph: ConceptGraph,
    pub sentiment: SentimentLexicon,
    pub stopwords: Stoplist,
    pub tags: TagLexicon,
    pub abbreviations: Abbreviations,
    pub patterns: PatternSet,
    /// Provenance of each loaded file, in manifest order.
    pub files: Vec<ResourceFile>,
}

impl ResourceBundle {
    fn from_sources(sources: &[(&str, PathBuf, String)]) -> Result<Self> {
        fn pick<'a>(sources: &'a [(&str, PathBuf, String)], name: &str) -> (String, &'a str) {
            let (_, p, c) = sources
                .iter()
                .find(|(n, _, _)| *n == name)
                .expect("all resources present");
            (p.display().to_string(), c.as_str())
        }
        let text = |name: &str| pick(sources, name);
        let (src, c) = text("lexicon");
        let lexicon = ConceptLexicon::parse(&src, c)?;
        let (src, c) = text("graph");
        let graph = ConceptGraph::parse(&src, c, &lexicon)?;
        let (src, c) = text("sentiment");
        let sentiment = SentimentLexicon::parse(&src, c)?;
        let (src, c) = text("stopwords");
        let stopwords = Stoplist::parse(&src, c)?;
        let (src, c) = text("tags");
        let tags = TagLexicon::parse(&src, c)?;
        let (src, c) = text("abbreviations");
        let abbreviations = Abbreviations::parse(&src, c)?;
        let (src, c) = text("patterns");
        let patterns = PatternSet::parse(&src, c)?;
        let files = sources
            .iter()
            .map(|(name, path, content)| ResourceFile {
                name: name.to_string(),
                path: path.clone(),
                sha256: sha256_hex(content.as_bytes()),
            })
            .collect();
        Ok(Self {
            lexicon,
            graph,
            sentiment,
            stopwords,
            tags,
            abbreviations,
            patterns,
            files,
        })
    }

    /// The resources shipped in `data/`, compiled into the library.
    pub fn bundled() -> Self {
        let sources: Vec<(&str, PathBuf, String)> = [
            ("lexicon", "lexicon.tsv", LEXICON),
            ("graph", "hierarchy.tsv", HIERARCHY),
            ("sentiment", "sentiment.tsv", SENTIMENT),
            ("stopwords", "stopwords.txt", STOPWORDS),
            ("tags", "tags.tsv", TAGS),
            ("abbreviations", "abbreviations.txt", ABBREVIATIONS),
            ("patterns", "patterns.txt", PATTERNS),
        ]
        .into_iter()
        .map(|(n, p, c)| (n, PathBuf::from(p), c.to_string()))
        .collect();
        Self::from_sources(&sources).expect("bundled resources parse")
    }

    pub fn analyzer(&self) -> TermAnalyzer<'_> {
        TermAnalyzer::new(&self.stopwords, &self.lexicon)
    }

    pub fn file(&self, name: &str) -> Option<&ResourceFile> {
        self.files.iter().find(|f| f.name == name)
    }
}

/// Loads the seven resources a manifest lists and checks any pinned hashes.
pub fn load_resources(manifest_path: impl AsRef<Path>) -> Result<ResourceBundle> {
    let manifest = load_manifest(manifest_path)?;
    load_resources_from(&manifest)
}

pub fn load_resources_from(manifest: &Manifest) -> Result<ResourceBundle> {
    let mut sources = Vec::new();
    for (name, rel) in manifest.resources() {
        let path = manifest.resolve(rel);
        let content = read_file(&path)?;
        if let Some(expected) = manifest.hashes.get(name) {
            let found = sha256_hex(content.as_bytes());
            if !expected.eq_ignore_ascii_case(&found) {
                return Err(Error::Config(format!(
                    "{name} ({}) has sha256 {found}, manifest expects {expected}",
                    path.display()
                )));
            }
        }
        sources.push((name, path, content));
    }
    ResourceBundle::from_sources(&sources)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn bundled_manifest_loads_all_seven() {
        let bundle = load_resources(crate::data_dir().join("manifest.json")).unwrap();
        assert_eq!(bundle.files.len(), 7);
        let embedded = ResourceBundle::bundled();
        for (a, b) in bundle.files.iter().zip(&embedded.files) {
            assert_eq!(a.name, b.name);
            assert_eq!(
                a.sha256, b.sha256,
                "{} differs from the embedded copy",
                a.name
            );
        }
        assert_eq!(bundle.lexicon.len(), embedded.lexicon.len());
    }

    fn write_manifest(dir: &Path, drop: Option<&str>, extra: &str) -> PathBuf {
        let data = crate::data_dir();
        let mut fields = vec![];
        for (k, f) in [
            ("lexicon", "lexicon.tsv"),
            ("graph", "hierarchy.tsv"),
            ("sentiment", "sentiment.tsv"),
            ("stopwords", "stopwords.txt"),
            ("tags", "tags.tsv"),
            ("abbreviations", "abbreviations.txt"),
            ("patterns", "patterns.txt"),
        ] {
            if Some(k) != drop {
                let p = if dir.join(f).exists() {
                    dir.join(f)
                } else {
                    data.join(f)
                };
                fields.push(format!("{k:?}: {:?}", p.display().to_string()));
            }
        }
        if !extra.is_empty() {
            fields.push(extra.to_string());
        }
        let path = dir.join("manifest.json");
        fs::write(&path, format!("{{{}}}", fields.join(", "))).unwrap();
        path
    }

    #[test]
    fn missing_sentiment_path_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let m = write_manifest(dir.path(), Some("sentiment"), "");
        match load_resources(m) {
            Err(Error::Json { message, .. }) => assert!(message.contains("sentiment"), "{message}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graph_with_unknown_cui_names_it() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("hierarchy.tsv"), "C0026591\tC9999999\n").unwrap();
        let m = write_manifest(dir.path(), None, "");
        let err = load_resources(m).unwrap_err().to_string();
        assert!(err.contains("C9999999"), "{err}");
    }

    #[test]
    fn unresolved_synonym_set_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(
            dir.path().join("patterns.txt"),
            "FACTOID := [@NOPE] + [NN]\n",
        )
        .unwrap();
        let m = write_manifest(dir.path(), None, "");
        let err = load_resources(m).unwrap_err().to_string();
        assert!(err.contains("NOPE"), "{err}");
    }

    #[test]
    fn pinned_hash_is_checked() {
        let dir = tempfile::tempdir().unwrap();
        let good = sha256_hex(STOPWORDS.as_bytes());
        let m = write_manifest(
            dir.path(),
            None,
            &format!("\"hashes\": {{\"stopwords\": \"{good}\"}}"),
        );
        assert!(load_resources(&m).is_ok());
        let m = write_manifest(dir.path(), None, "\"hashes\": {\"stopwords\": \"00\"}");
        assert!(matches!(load_resources(&m), Err(Error::Config(_))));
        let m = write_manifest(dir.path(), None, "\"hashes\": {\"bogus\": \"00\"}");
        assert!(load_resources(&m).is_err());
    }

    #[test]
    fn hash_tracks_bytes() {
        assert_eq!(sha256_hex(b"abc"), sha256_hex(b"abc"));
        assert_ne!(sha256_hex(b"abc"), sha256_hex(b"abd"));
    }
}
