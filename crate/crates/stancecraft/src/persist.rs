//! Versioned on-disk corpus: a header line, then one record per line.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use stancecraft_core::corpus::Corpus;

use crate::error::{Error, Result};
use crate::ingest::{self, DateRange, InputFormat, RawRecord, Reject};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub schema: u32,
    pub provenance: String,
    pub filter_terms: Option<Vec<String>>,
    /// Lets `load` tell a complete file from a truncated one.
    pub records: usize,
}

pub fn to_bytes(corpus: &Corpus) -> Result<Vec<u8>> {
    let header = Header {
        schema: SCHEMA_VERSION,
        provenance: corpus.provenance.clone(),
        filter_terms: corpus.filter_terms_applied.clone(),
        records: corpus.len(),
    };
    let mut out = serde_json::to_vec(&header)?;
    out.push(b'\n');
    ingest::write_jsonl(&mut out, corpus.records())?;
    Ok(out)
}

pub fn persist(corpus: &Corpus, path: &Path) -> Result<()> {
    let bytes = to_bytes(corpus)?;
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&bytes).map_err(|e| Error::io(path, e))
}

pub fn from_bytes(bytes: &[u8], path: &Path) -> Result<Corpus> {
    if !bytes.is_empty() && !bytes.ends_with(b"\n") {
        return Err(Error::schema(path, "file ends mid-record (truncated)"));
    }
    let mut lines = BufReader::new(bytes).lines();
    let first = match lines.next() {
        Some(l) => l.map_err(|e| Error::io(path, e))?,
        None => return Err(Error::schema(path, "missing header line")),
    };
    let header: Header = serde_json::from_str(&first).map_err(|e| Error::schema(path, format!("bad header: {e}")))?;
    if header.schema != SCHEMA_VERSION {
        return Err(Error::schema(
            path,
            format!("schema version {} (expected {SCHEMA_VERSION})", header.schema),
        ));
    }
    let mut records = Vec::with_capacity(header.records);
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let raw: RawRecord =
            serde_json::from_str(&line).map_err(|e| Error::schema(path, format!("record {}: {e}", i + 1)))?;
        let record = ingest::validate(raw, &DateRange::default())
            .map_err(|reason| Error::schema(path, format!("record {}: {reason}", i + 1)))?;
        records.push(record);
    }
    if records.len() != header.records {
        return Err(Error::schema(
            path,
            format!(
                "expected {} records, found {} (truncated)",
                header.records,
                records.len()
            ),
        ));
    }
    let mut corpus = Corpus::new(records, header.provenance)?;
    corpus.filter_terms_applied = header.filter_terms;
    Ok(corpus)
}

pub fn load(path: &Path) -> Result<Corpus> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    from_bytes(&bytes, path)
}

fn is_persisted(bytes: &[u8]) -> bool {
    let first = bytes
        .split(|&b| b == b'\n')
        .find(|l| !l.iter().all(u8::is_ascii_whitespace));
    match first.map(serde_json::from_slice::<serde_json::Value>) {
        Some(Ok(v)) => v.get("schema").is_some(),
        _ => false,
    }
}

/// Loads a persisted corpus, or ingests a raw export (JSON lines or CSV)
/// and returns its rejects.
pub fn load_any(path: &Path, format: Option<InputFormat>, range: &DateRange) -> Result<(Corpus, Vec<Reject>)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if format != Some(InputFormat::Csv) && is_persisted(&bytes) {
        let corpus = from_bytes(&bytes, path)?;
        let kept: Vec<_> = corpus
            .records()
            .iter()
            .filter(|r| range.contains(r.timestamp))
            .cloned()
            .collect();
        if kept.len() == corpus.len() {
            return Ok((corpus, Vec::new()));
        }
        let mut narrowed = Corpus::new(kept, corpus.provenance.clone())?;
        narrowed.filter_terms_applied = corpus.filter_terms_applied.clone();
        return Ok((narrowed, Vec::new()));
    }
    let format = format.unwrap_or_else(|| InputFormat::from_path(path));
    let report = ingest::ingest(&bytes[..], format, &path.display().to_string(), range)?;
    Ok((report.corpus, report.rejects))
}
