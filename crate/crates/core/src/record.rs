//! Result and checkpoint serialization: JSON-lines records for batch runs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coverage::SearchHit;
use crate::error::Result;

/// Which command produced a record.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    PairSearch,
    TripleSearch,
    Charsum,
    Bound,
}

/// One line of a result file. Every tested or reported combination becomes
/// one record; search hits are records with `covered = true`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub q: u64,
    pub p: u64,
    pub v: u32,
    pub m: u64,
    pub k: u64,
    pub covered: bool,
    pub kind: RecordKind,
    /// Command-specific extras (e.g. `exact_s`, `lower_bound`, `slack`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<BTreeMap<String, serde_json::Value>>,
}

impl ResultRecord {
    pub fn from_hit(hit: &SearchHit, kind: RecordKind) -> Self {
        ResultRecord {
            q: hit.q,
            p: hit.p,
            v: hit.v,
            m: hit.m,
            k: hit.k,
            covered: true,
            kind,
            extra: None,
        }
    }

    /// Serialize to a single JSON line (no trailing newline).
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }

    pub fn parse_line(line: &str) -> Result<ResultRecord> {
        Ok(serde_json::from_str(line)?)
    }
}

/// Read every record from a JSON-lines file, skipping blank lines.
pub fn read_records(path: &Path) -> Result<Vec<ResultRecord>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(ResultRecord::parse_line(line)?);
    }
    Ok(out)
}

/// Persistent progress marker for resumable searches. Written after every
/// completed prime power, atomically (write + rename), so a killed run can
/// always pick up from the last fully emitted `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// Hash identifying the command and parameters that own the output file.
    pub fingerprint: String,
    pub last_completed_q: u64,
    pub emitted_hit_count: u64,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match fs::read_to_string(path) {
            Ok(text) => Ok(Some(serde_json::from_str(&text)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
