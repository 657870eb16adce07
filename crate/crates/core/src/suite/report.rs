//! Report records, the JSON document and the per-theorem CSV zero tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Floats in reports carry 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// One refined zero, kept for the CSV tables.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRow {
    pub lower: String,
    pub upper: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    /// Sort key; unique per grid row.
    pub key: String,
    pub suite: String,
    pub check: String,
    pub n: usize,
    pub q: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub details: Value,
    #[serde(skip)]
    pub roots: Vec<RootRow>,
}

impl Record {
    pub fn new(suite: &str, check: &str, n: usize, q: String, params: BTreeMap<String, String>) -> Self {
        let tail: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let key = format!("{suite}/{check}/q={q}/n={n:03}/{}", tail.join(";"));
        Self {
            key,
            suite: suite.into(),
            check: check.into(),
            n,
            q,
            params,
            pass: false,
            error: None,
            details: Value::Null,
            roots: vec![],
        }
    }

    pub fn params_field(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub timestamp: String,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl Report {
    /// Sorts by key so the body does not depend on completion order.
    pub fn new(timestamp: String, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.key.cmp(&b.key));
        let passed = records.iter().filter(|r| r.pass).count();
        Self {
            timestamp,
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }

    /// CSV text per theorem, keyed by theorem id. Only zero records with
    /// roots contribute.
    pub fn zero_tables(&self) -> BTreeMap<String, String> {
        let mut out: BTreeMap<String, String> = BTreeMap::new();
        for r in self.records.iter().filter(|r| r.suite == "zeros") {
            let table = out
                .entry(r.check.clone())
                .or_insert_with(|| "theorem,n,q,params,root_index,lower,upper,value\n".to_string());
            for (i, root) in r.roots.iter().enumerate() {
                writeln!(
                    table,
                    "{},{},{},{},{},{},{},{}",
                    r.check,
                    r.n,
                    r.q,
                    r.params_field(),
                    i + 1,
                    root.lower,
                    root.upper,
                    fmt_float(root.value)
                )
                .expect("writing to a string");
            }
        }
        out
    }

    /// Writes `report.json` and, if asked, the CSV tables; returns the paths
    /// written.
    pub fn write_to(&self, dir: &Path, emit_csv: bool) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let path = dir.join("report.json");
        std::fs::write(&path, self.to_json()).map_err(|e| io_error(&path, e))?;
        let mut written = vec![path];
        if emit_csv {
            written.extend(self.write_csv(dir)?);
        }
        Ok(written)
    }

    /// Writes `zeros_<id>.csv` for every theorem present.
    pub fn write_csv(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let mut written = Vec::new();
        for (id, table) in self.zero_tables() {
            let path = dir.join(format!("zeros_{id}.csv"));
            std::fs::write(&path, table).map_err(|e| io_error(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Config(format!("{}: {e}", path.display()))
}
