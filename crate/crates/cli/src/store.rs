//! Append-only JSONL store of scan results, keyed by (spec, Hurwitz class).

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use branchcover::analysis::{ClassReport, ENGINE_VERSION};
use branchcover::cm::CmType;
use branchcover::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub spec: String,
    pub hurwitz_class: usize,
    pub local_monodromy: [u32; 3],
    pub genus: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub special: bool,
    pub cm_status: String,
    pub cm_type: Option<CmType>,
    pub verified_by_matrices: bool,
    pub timestamp: String,
    pub engine_version: String,
}

impl ScanRecord {
    pub fn from_class(r: &ClassReport, timestamp: &str) -> Self {
        ScanRecord {
            spec: r.cm.spec.clone(),
            hurwitz_class: r.id,
            local_monodromy: r.cm.local_monodromy,
            genus: r.cm.genus,
            n: r.cm.n,
            special: r.cm.n == 0,
            cm_status: r.cm.status.as_str().to_string(),
            cm_type: r.cm.cm_type(),
            verified_by_matrices: r.cm.verified_by_matrices,
            timestamp: timestamp.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
        }
    }

    pub fn key(&self) -> (String, usize) {
        (self.spec.clone(), self.hurwitz_class)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Invalid(format!("store {}: {e}", path.display()))
}

/// A JSONL file plus the keys already present in it.
pub struct Store {
    path: PathBuf,
    keys: HashSet<(String, usize)>,
    file: File,
}

impl Store {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut keys = HashSet::new();
        if path.exists() {
            let f = File::open(&path).map_err(|e| io_error(&path, e))?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line.map_err(|e| io_error(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: ScanRecord = serde_json::from_str(&line).map_err(|e| {
                    Error::Invalid(format!("store {} line {}: {e}", path.display(), i + 1))
                })?;
                keys.insert(rec.key());
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| io_error(&path, e))?;
        Ok(Store { path, keys, file })
    }

    /// Appends the record unless its key is present; returns whether it was written.
    pub fn append(&mut self, rec: &ScanRecord) -> Result<bool> {
        if !self.keys.insert(rec.key()) {
            return Ok(false);
        }
        let line = serde_json::to_string(rec).map_err(|e| Error::Internal(e.to_string()))?;
        writeln!(self.file, "{line}").map_err(|e| io_error(&self.path, e))?;
        self.file.flush().map_err(|e| io_error(&self.path, e))?;
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(spec: &str, class: usize) -> ScanRecord {
        ScanRecord {
            spec: spec.into(),
            hurwitz_class: class,
            local_monodromy: [3, 3, 3],
            genus: 1,
            n: 0,
            special: true,
            cm_status: "cm".into(),
            cm_type: None,
            verified_by_matrices: false,
            timestamp: "2026-01-01T00:00:00+00:00".into(),
            engine_version: ENGINE_VERSION.into(),
        }
    }

    fn lines(path: &Path) -> usize {
        std::fs::read_to_string(path).unwrap().lines().count()
    }

    #[test]
    fn appends_each_key_once_across_reopens() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.jsonl");
        let mut st = Store::open(&path).unwrap();
        assert!(st.append(&record("cyclic:n=3", 1)).unwrap());
        assert!(!st.append(&record("cyclic:n=3", 1)).unwrap());
        assert!(st.append(&record("cyclic:n=3", 2)).unwrap());
        drop(st);
        let mut st = Store::open(&path).unwrap();
        assert!(!st.append(&record("cyclic:n=3", 2)).unwrap());
        assert_eq!(lines(&path), 2);
    }

    #[test]
    fn rejects_corrupt_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.jsonl");
        std::fs::write(&path, "not json\n").unwrap();
        assert!(matches!(Store::open(&path), Err(Error::Invalid(_))));
    }
}
