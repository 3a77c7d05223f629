//! A single JSON file holding the largest table built so far.
//!
//! Tables are prefix-stable, so any cached table with `gmax' >= gmax`
//! answers a request for `gmax` by truncation. The file carries a SHA-256
//! of the embedded document; a mismatch or parse failure is treated as
//! corruption, reported as a warning, and repaired by recomputing.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use hodge_volumes::{build_table, CTable};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::document::{DocumentError, TableDocument};

pub const CACHE_ENV: &str = "HODGEVOL_CACHE";

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    checksum: String,
    document: TableDocument,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cannot read cache {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache {path} is corrupt: {reason}")]
    Corrupt { path: PathBuf, reason: String },
}

pub fn checksum(document: &TableDocument) -> String {
    hex::encode(Sha256::digest(document.to_json().as_bytes()))
}

#[derive(Debug, Clone, Default)]
pub struct TableCache {
    path: Option<PathBuf>,
}

impl TableCache {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self { path }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// The cached table, `Ok(None)` when there is no cache configured or no
    /// file yet.
    pub fn load(&self) -> Result<Option<CTable>, CacheError> {
        let Some(path) = &self.path else {
            return Ok(None);
        };
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => {
                return Err(CacheError::Io {
                    path: path.clone(),
                    source,
                })
            }
        };
        let corrupt = |reason: String| CacheError::Corrupt {
            path: path.clone(),
            reason,
        };
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if checksum(&file.document) != file.checksum {
            return Err(corrupt("checksum mismatch".into()));
        }
        file.document
            .to_table()
            .map(Some)
            .map_err(|e: DocumentError| corrupt(e.to_string()))
    }

    /// Writes `table` atomically (temporary file, then rename).
    pub fn store(&self, table: &CTable) -> io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let document = TableDocument::from_table(table);
        let file = CacheFile {
            checksum: checksum(&document),
            document,
        };
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string(&file)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// A table covering `gmax`, from the cache when possible.
    ///
    /// Cache problems never fail the request: they are reported on `warn`
    /// and the table is rebuilt. A freshly built table replaces the cache
    /// only when it is larger than what was there.
    pub fn obtain(&self, gmax: u32, warn: &mut dyn Write) -> hodge_volumes::Result<CTable> {
        let cached = match self.load() {
            Ok(cached) => cached,
            Err(e) => {
                let _ = writeln!(warn, "warning: {e}; recomputing");
                None
            }
        };
        if let Some(table) = &cached {
            if table.covers(gmax) {
                return table.truncated(gmax);
            }
        }
        let table = build_table(gmax)?;
        if self.path.is_some() {
            if let Err(e) = self.store(&table) {
                let _ = writeln!(warn, "warning: could not write table cache: {e}");
            }
        }
        Ok(table)
    }
}
