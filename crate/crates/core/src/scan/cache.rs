//! Append-only JSONL journal of finished scan rows.
//!
//! Each line holds one key, the row and the SHA-256 digest of the row's
//! canonical JSON. A scan reopened on the same journal skips every key it
//! already holds. A torn final line (from an interrupted write) is dropped
//! on load; malformed lines elsewhere are an error.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ScanRow;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScanKey {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    #[serde(rename = "D")]
    pub radicand: i64,
}

impl fmt::Display for ScanKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a,b,c,d,D)=({},{},{},{},{})", self.a, self.b, self.c, self.d, self.radicand)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: ScanKey,
    pub digest: String,
    pub row: ScanRow,
}

impl CacheEntry {
    pub fn new(row: ScanRow) -> Self {
        CacheEntry { key: row.key(), digest: row_digest(&row), row }
    }
}

/// Hex SHA-256 of the row's JSON encoding.
pub fn row_digest(row: &ScanRow) -> String {
    let json = serde_json::to_vec(row).expect("rows always serialize");
    hex::encode(Sha256::digest(json))
}

#[derive(Debug, Default)]
pub struct ResultCache {
    path: Option<PathBuf>,
    entries: BTreeMap<ScanKey, CacheEntry>,
}

impl ResultCache {
    /// A cache that is never written to disk.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads the journal at `path`, creating it if missing.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| Error::Io { key: path.display().to_string(), source };
        let mut entries = BTreeMap::new();
        if path.exists() {
            let lines: Vec<String> =
                BufReader::new(File::open(&path).map_err(io_err)?).lines().collect::<Result<_, _>>().map_err(io_err)?;
            let last = lines.len().saturating_sub(1);
            for (i, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheEntry>(line) {
                    Ok(e) => {
                        entries.insert(e.key, e);
                    }
                    Err(_) if i == last => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Ok(ResultCache { path: Some(path), entries })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, key: &ScanKey) -> Option<&CacheEntry> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CacheEntry> {
        self.entries.values()
    }

    /// Runs `job` over `jobs` on the worker pool. Rows are handed to a single
    /// writer thread that appends them to the journal as they arrive, so a
    /// failure midway keeps every row finished before it.
    pub(crate) fn record_parallel<T, F>(&mut self, jobs: Vec<T>, job: F) -> Result<()>
    where
        T: Send + Sync,
        F: Fn(&T) -> Result<Vec<ScanRow>> + Sync,
    {
        let mut journal = match &self.path {
            Some(p) => Some(BufWriter::new(
                OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(p)
                    .map_err(|source| Error::Io { key: p.display().to_string(), source })?,
            )),
            None => None,
        };
        let (tx, rx) = mpsc::channel::<Vec<ScanRow>>();
        let (computed, written) = std::thread::scope(|s| {
            let writer = s.spawn(move || -> (Vec<CacheEntry>, Result<()>) {
                let mut done = Vec::new();
                for rows in rx {
                    for row in rows {
                        let entry = CacheEntry::new(row);
                        if let Some(w) = journal.as_mut() {
                            let line = serde_json::to_string(&entry).expect("entries serialize");
                            let res = writeln!(w, "{line}").and_then(|_| w.flush());
                            if let Err(source) = res {
                                return (done, Err(Error::Io { key: entry.key.to_string(), source }));
                            }
                        }
                        done.push(entry);
                    }
                }
                (done, Ok(()))
            });
            let computed = jobs.par_iter().try_for_each_with(tx, |tx, j| -> Result<()> {
                let rows = job(j)?;
                // a closed channel means the writer failed; its error wins
                let _ = tx.send(rows);
                Ok(())
            });
            (computed, writer.join().expect("journal writer panicked"))
        });
        let (done, write_result) = written;
        for e in done {
            self.entries.insert(e.key, e);
        }
        write_result?;
        computed
    }
}
