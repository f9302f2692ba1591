use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::Query;
use crate::{Error, Result};

/// Extracts the text of every `<Id>` element, in order, from an
/// E-utilities style search response. Tag names match case-insensitively.
pub fn parse_remote_idlist(xml: &str) -> Result<Vec<String>> {
    let bytes = xml.as_bytes();
    let mut stack: Vec<(String, usize)> = Vec::new();
    let mut ids = Vec::new();
    let mut text_start = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'<' {
            i += 1;
            continue;
        }
        let tag_start = i;
        let rest = &xml[i..];
        let skip_to = |end: &str| -> Result<usize> {
            rest.find(end)
                .map(|p| i + p + end.len())
                .ok_or_else(|| Error::MalformedXml {
                    offset: tag_start,
                    message: format!("unterminated markup, expected `{end}`"),
                })
        };
        if rest.starts_with("<?") {
            i = skip_to("?>")?;
            continue;
        }
        if rest.starts_with("<!--") {
            i = skip_to("-->")?;
            continue;
        }
        if rest.starts_with("<![CDATA[") {
            i = skip_to("]]>")?;
            continue;
        }
        if rest.starts_with("<!") {
            i = skip_to(">")?;
            continue;
        }
        let close = skip_to(">")?;
        let inner = &xml[i + 1..close - 1];
        if let Some(name) = inner.strip_prefix('/') {
            let name = name.trim().to_ascii_lowercase();
            match stack.pop() {
                Some((open, _)) if open == name => {
                    if name == "id" {
                        ids.push(xml[text_start..tag_start].trim().to_string());
                    }
                }
                Some((open, at)) => {
                    return Err(Error::MalformedXml {
                        offset: tag_start,
                        message: format!("`</{name}>` closes `<{open}>` opened at byte {at}"),
                    })
                }
                None => {
                    return Err(Error::MalformedXml {
                        offset: tag_start,
                        message: format!("`</{name}>` has no matching open tag"),
                    })
                }
            }
        } else if !inner.ends_with('/') {
            let name: String = inner
                .split(|c: char| c.is_whitespace())
                .next()
                .unwrap_or("")
                .to_ascii_lowercase();
            if name.is_empty() {
                return Err(Error::MalformedXml {
                    offset: tag_start,
                    message: "empty tag name".into(),
                });
            }
            stack.push((name, tag_start));
            text_start = close;
        }
        i = close;
    }
    if let Some((name, at)) = stack.pop() {
        return Err(Error::MalformedXml {
            offset: at,
            message: format!("`<{name}>` is never closed"),
        });
    }
    Ok(ids)
}

/// A search engine that answers a query with an ordered list of document ids.
pub trait RemoteSearcher {
    fn search_ids(&self, query: &Query, limit: usize) -> Result<Vec<String>>;
}

/// Serves canned responses from `<dir>/<key>.xml`, where the key is the
/// first 16 hex digits of the SHA-256 of the query's boolean form.
#[derive(Debug, Clone)]
pub struct FileStubSearcher {
    dir: PathBuf,
}

impl FileStubSearcher {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn key(query: &Query) -> String {
        let digest = Sha256::digest(query.boolean().as_bytes());
        hex::encode(digest)[..16].to_string()
    }

    pub fn path_for(&self, query: &Query) -> PathBuf {
        self.dir.join(format!("{}.xml", Self::key(query)))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

impl RemoteSearcher for FileStubSearcher {
    fn search_ids(&self, query: &Query, limit: usize) -> Result<Vec<String>> {
        let path = self.path_for(query);
        let xml = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let mut ids = parse_remote_idlist(&xml)?;
        ids.truncate(limit);
        Ok(ids)
    }
}
