//! CSV and JSON writers for experiment results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{ExperimentSpec, OutputFormat, RunOutput};
use crate::error::{Error, Result};

/// Columns every CSV row starts with.
pub const KEY_COLUMNS: [&str; 7] = ["experiment", "alpha", "beta", "n", "p", "seed", "replication"];

/// Reproducibility metadata stored with JSON summaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub git_hash: String,
    pub seed: u64,
    pub version: &'static str,
}

impl Provenance {
    pub fn for_spec(spec: &ExperimentSpec) -> Self {
        Self {
            git_hash: git_hash(),
            seed: spec.ensemble.seed,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// `HEAVYCOV_GIT_HASH` if set, otherwise `git rev-parse HEAD`, otherwise
/// `"unknown"`.
pub fn git_hash() -> String {
    if let Ok(h) = std::env::var("HEAVYCOV_GIT_HASH") {
        return h;
    }
    std::process::Command::new("git")
        .args(["rev-parse", "HEAD"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Per-replication records as CSV bytes.
pub fn records_csv(spec: &ExperimentSpec, out: &RunOutput) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = KEY_COLUMNS
        .iter()
        .map(|s| s.to_string())
        .chain(out.columns.iter().cloned());
    w.write_record(header).map_err(csv_err)?;
    let cfg = &spec.ensemble;
    let kind = spec.kind.to_string();
    let alpha = cfg.dist.alpha().to_string();
    let beta = cfg.growth.beta.to_string();
    let n = cfg.n.to_string();
    let p = cfg.p().to_string();
    for r in &out.records {
        let mut row = vec![
            kind.clone(),
            alpha.clone(),
            beta.clone(),
            n.clone(),
            p.clone(),
            r.seed.to_string(),
            r.replication.to_string(),
        ];
        row.extend(r.values.iter().map(|v| v.to_string()));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    spec: &'a ExperimentSpec,
    summary: &'a [super::SummaryStats],
    provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    columns: Option<&'a [String]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    records: Option<&'a [super::ReplicationRecord]>,
}

/// JSON object with `spec`, `summary` and `provenance`; records are included
/// when `with_records` is set.
pub fn summary_json(spec: &ExperimentSpec, out: &RunOutput, with_records: bool) -> Result<Vec<u8>> {
    let doc = JsonDocument {
        spec,
        summary: &out.summary,
        provenance: Provenance::for_spec(spec),
        columns: with_records.then_some(out.columns.as_slice()),
        records: with_records.then_some(out.records.as_slice()),
    };
    let mut bytes = serde_json::to_vec_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Hex SHA-256 of a byte string.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Path of the summary written next to a CSV output.
pub fn summary_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_stem()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    name.push(".summary.json");
    out.with_file_name(name)
}

/// Writes results to `spec.out`, returning the paths written. CSV output
/// puts records in `out` and the summary in `<stem>.summary.json`; JSON
/// output puts everything in `out`. Without `out`, records go to stdout.
pub fn write_outputs(spec: &ExperimentSpec, out: &RunOutput) -> Result<Vec<PathBuf>> {
    match (&spec.out, spec.format) {
        (Some(path), OutputFormat::Csv) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, records_csv(spec, out)?)?;
            let sp = summary_path(path);
            fs::write(&sp, summary_json(spec, out, false)?)?;
            Ok(vec![path.clone(), sp])
        }
        (Some(path), OutputFormat::Json) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, summary_json(spec, out, true)?)?;
            Ok(vec![path.clone()])
        }
        (None, fmt) => {
            let bytes = match fmt {
                OutputFormat::Csv => records_csv(spec, out)?,
                OutputFormat::Json => summary_json(spec, out, true)?,
            };
            std::io::stdout().write_all(&bytes)?;
            Ok(Vec::new())
        }
    }
}
