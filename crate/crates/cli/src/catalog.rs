//! Append-only JSON-lines catalog keyed by a content hash of each payload.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const CATALOG_ENV: &str = "TBRAID_CATALOG";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("catalog {path}, line {line}: {source}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        source: serde_json::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    TlinkFulltwist,
    Satellite,
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    pub payload: serde_json::Value,
    pub timestamp: u64,
}

impl CatalogEntry {
    pub fn new(kind: EntryKind, payload: serde_json::Value) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        CatalogEntry {
            id: entry_id(kind, &payload),
            kind,
            payload,
            timestamp,
        }
    }
}

/// Hex SHA-256 of the kind tag and the compact payload JSON.
pub fn entry_id(kind: EntryKind, payload: &serde_json::Value) -> String {
    let tag = serde_json::to_string(&kind).expect("kind serializes");
    let body = serde_json::to_string(payload).expect("payload serializes");
    let mut h = Sha256::new();
    h.update(tag.as_bytes());
    h.update(b"\n");
    h.update(body.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Single writer over one catalog file. Ids already present are skipped.
pub struct Catalog {
    path: PathBuf,
    ids: HashSet<String>,
}

impl Catalog {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let path = path.as_ref().to_path_buf();
        let mut ids = HashSet::new();
        for entry in read_entries(&path)? {
            ids.insert(entry.id);
        }
        Ok(Catalog { path, ids })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends entries whose ids are new; returns how many were written.
    pub fn append(&mut self, entries: &[CatalogEntry]) -> Result<usize, CatalogError> {
        let io = |source| CatalogError::Io {
            path: self.path.clone(),
            source,
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(io)?;
        let mut written = 0;
        for entry in entries {
            if self.ids.insert(entry.id.clone()) {
                let line = serde_json::to_string(entry).expect("entry serializes");
                writeln!(file, "{line}").map_err(io)?;
                written += 1;
            }
        }
        file.flush().map_err(io)?;
        Ok(written)
    }
}

pub fn read_entries(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(source) => {
            return Err(CatalogError::Io {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CatalogError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line).map_err(|source| CatalogError::Corrupt {
            path: path.to_path_buf(),
            line: i + 1,
            source,
        })?;
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn ids_depend_on_kind_and_payload_only() {
        let a = CatalogEntry::new(EntryKind::Certificate, json!({"x": 1}));
        let b = CatalogEntry::new(EntryKind::Certificate, json!({"x": 1}));
        let c = CatalogEntry::new(EntryKind::Satellite, json!({"x": 1}));
        assert_eq!(a.id, b.id);
        assert_ne!(a.id, c.id);
        assert_eq!(a.id.len(), 64);
    }

    #[test]
    fn appends_are_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        let e = CatalogEntry::new(EntryKind::Certificate, json!({"x": 1}));
        let mut cat = Catalog::open(&path).unwrap();
        assert_eq!(cat.append(&[e.clone(), e.clone()]).unwrap(), 1);
        let mut again = Catalog::open(&path).unwrap();
        assert_eq!(again.append(&[e]).unwrap(), 0);
        assert_eq!(read_entries(&path).unwrap().len(), 1);
    }
}
