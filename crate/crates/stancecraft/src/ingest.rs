//! Reading exported tweet files into a validated corpus.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, NaiveDateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use stancecraft_core::corpus::{Corpus, PartyCode, Timestamp, TweetRecord};

use crate::error::{Error, Result};

pub const FIELDS: [&str; 6] = ["id", "date", "username", "party", "state", "content"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Jsonl,
    Csv,
}

impl InputFormat {
    /// `.csv` files are CSV, everything else is JSON lines.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
            _ => InputFormat::Jsonl,
        }
    }
}

/// One line of the export schema, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    pub id: String,
    pub date: String,
    pub username: String,
    pub party: String,
    pub state: String,
    pub content: String,
}

impl From<&TweetRecord> for RawRecord {
    fn from(r: &TweetRecord) -> Self {
        RawRecord {
            id: r.id.clone(),
            date: format_timestamp(r.timestamp),
            username: r.username.clone(),
            party: r.party.as_str().into(),
            state: r.state.clone(),
            content: r.text.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reject {
    pub line: u64,
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestReport {
    pub corpus: Corpus,
    pub rejects: Vec<Reject>,
}

/// Inclusive bounds on record timestamps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateRange {
    pub from: Option<Timestamp>,
    pub to: Option<Timestamp>,
}

impl DateRange {
    pub fn contains(&self, t: Timestamp) -> bool {
        self.from.is_none_or(|f| t >= f) && self.to.is_none_or(|e| t <= e)
    }
}

pub fn format_timestamp(t: Timestamp) -> String {
    match DateTime::<Utc>::from_timestamp(t.0, 0) {
        Some(dt) => dt.to_rfc3339_opts(SecondsFormat::Secs, true),
        None => t.0.to_string(),
    }
}

/// ISO-8601 with or without offset, or a bare date. Values without an
/// offset are taken as UTC; sub-second digits are dropped.
pub fn parse_timestamp(s: &str) -> Option<Timestamp> {
    let s = s.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Some(Timestamp(dt.timestamp()));
    }
    for fmt in [
        "%Y-%m-%d %H:%M:%S%.f%:z",
        "%Y-%m-%d %H:%M:%S%.f%z",
        "%Y-%m-%dT%H:%M:%S%.f%z",
    ] {
        if let Ok(dt) = DateTime::parse_from_str(s, fmt) {
            return Some(Timestamp(dt.timestamp()));
        }
    }
    for fmt in [
        "%Y-%m-%dT%H:%M:%S%.f",
        "%Y-%m-%d %H:%M:%S%.f",
        "%Y-%m-%dT%H:%M",
        "%Y-%m-%d %H:%M",
    ] {
        if let Ok(dt) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(Timestamp(dt.and_utc().timestamp()));
        }
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|dt| Timestamp(dt.and_utc().timestamp()))
}

/// Checks one raw record; the error is a human-readable reason.
pub fn validate(raw: RawRecord, range: &DateRange) -> std::result::Result<TweetRecord, String> {
    if raw.id.trim().is_empty() {
        return Err("empty id".into());
    }
    let party = PartyCode::from_str(raw.party.trim()).map_err(|_| format!("unknown party code {:?}", raw.party))?;
    let timestamp = parse_timestamp(&raw.date).ok_or_else(|| format!("unparseable date {:?}", raw.date))?;
    if !range.contains(timestamp) {
        return Err(format!("date {} outside the configured range", raw.date));
    }
    Ok(TweetRecord {
        id: raw.id,
        timestamp,
        username: raw.username,
        party,
        state: raw.state,
        text: raw.content,
    })
}

struct Collector<'a> {
    range: &'a DateRange,
    records: Vec<TweetRecord>,
    rejects: Vec<Reject>,
}

impl Collector<'_> {
    fn push(&mut self, line: u64, raw: RawRecord) {
        let id = raw.id.clone();
        match validate(raw, self.range) {
            Ok(r) => self.records.push(r),
            Err(reason) => self.rejects.push(Reject { line, id, reason }),
        }
    }

    fn reject(&mut self, line: u64, reason: String) {
        self.rejects.push(Reject {
            line,
            id: String::new(),
            reason,
        });
    }

    fn finish(self, provenance: &str) -> Result<IngestReport> {
        Ok(IngestReport {
            corpus: Corpus::new(self.records, provenance)?,
            rejects: self.rejects,
        })
    }
}

/// Malformed rows go to the rejects report; a duplicate id fails the
/// whole ingest.
pub fn ingest<R: Read>(source: R, format: InputFormat, provenance: &str, range: &DateRange) -> Result<IngestReport> {
    let mut c = Collector {
        range,
        records: Vec::new(),
        rejects: Vec::new(),
    };
    match format {
        InputFormat::Jsonl => read_jsonl(source, &mut c)?,
        InputFormat::Csv => read_csv(source, &mut c)?,
    }
    c.finish(provenance)
}

fn read_jsonl<R: Read>(source: R, c: &mut Collector<'_>) -> Result<()> {
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line.map_err(|e| Error::Format(format!("line {line_no}: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RawRecord>(&line) {
            Ok(raw) => c.push(line_no, raw),
            Err(e) => c.reject(line_no, format!("malformed record: {e}")),
        }
    }
    Ok(())
}

fn read_csv<R: Read>(source: R, c: &mut Collector<'_>) -> Result<()> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(source);
    let headers = reader.headers()?.clone();
    if headers.is_empty() {
        return Ok(());
    }
    let mut cols = [0usize; 6];
    for (slot, name) in cols.iter_mut().zip(FIELDS) {
        *slot = headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Format(format!("CSV header lacks column {name:?}")))?;
    }
    let content_last = cols[5] == headers.len() - 1;
    for row in reader.records() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                c.reject(line, format!("malformed row: {e}"));
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        let n = headers.len();
        if row.len() < n || (row.len() > n && !content_last) {
            c.reject(line, format!("expected {n} fields, found {}", row.len()));
            continue;
        }
        let field = |k: usize| row.get(cols[k]).unwrap_or_default().to_string();
        // unquoted commas in a trailing text column are folded back in
        let content = if row.len() > n {
            row.iter().skip(cols[5]).collect::<Vec<_>>().join(",")
        } else {
            field(5)
        };
        let raw = RawRecord {
            id: field(0),
            date: field(1),
            username: field(2),
            party: field(3),
            state: field(4),
            content,
        };
        c.push(line, raw);
    }
    Ok(())
}

pub fn ingest_path(path: &Path, format: Option<InputFormat>, range: &DateRange) -> Result<IngestReport> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let format = format.unwrap_or_else(|| InputFormat::from_path(path));
    ingest(file, format, &path.display().to_string(), range)
}

/// JSON lines in the export schema, e.g. for synthetic corpora.
pub fn write_jsonl<W: std::io::Write>(mut out: W, records: &[TweetRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, &RawRecord::from(r))?;
        out.write_all(b"\n").map_err(|e| Error::io("<output>", e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = r#"{"id":"1","date":"2020-03-01T10:00:00Z","username":"a","party":"D","state":"NY","content":"Wear a mask"}
{"id":"2","date":"2020-03-01 11:00:00","username":"b","party":"R","state":"TX","content":"Open up"}
{"id":"3","date":"2020-03-02","username":"c","party":"NPP","state":"Puerto Rico","content":"Hola"}
{"id":"4","date":"2020-03-02T08:00:00-05:00","username":"d","party":"X","state":"FL","content":"?"}
{"id":"5","date":"2020-03-03T00:00:00Z","username":"e","party":"R","state":"OH","content":"flu shot"}
"#;

    #[test]
    fn jsonl_rejects_unknown_party() {
        let r = ingest(FIXTURE.as_bytes(), InputFormat::Jsonl, "t", &DateRange::default()).unwrap();
        assert_eq!(r.corpus.len(), 4);
        assert_eq!(r.rejects.len(), 1);
        assert_eq!((r.rejects[0].line, r.rejects[0].id.as_str()), (4, "4"));
    }

    #[test]
    fn empty_stream() {
        for f in [InputFormat::Jsonl, InputFormat::Csv] {
            let r = ingest(&b""[..], f, "t", &DateRange::default()).unwrap();
            assert!(r.corpus.is_empty() && r.rejects.is_empty());
        }
    }

    #[test]
    fn duplicate_id_is_fatal() {
        let line = FIXTURE.lines().next().unwrap();
        let two = format!("{line}\n{line}\n");
        assert!(ingest(two.as_bytes(), InputFormat::Jsonl, "t", &DateRange::default()).is_err());
    }

    #[test]
    fn csv_quoting_and_trailing_commas() {
        let csv = "id,date,username,party,state,content\n\
                   1,2020-03-01,a,D,NY,\"Masks, tests, and care\"\n\
                   2,2020-03-01,b,R,TX,open up, now\n\
                   3,2020-03-01,c,NPP,PR\n";
        let r = ingest(csv.as_bytes(), InputFormat::Csv, "t", &DateRange::default()).unwrap();
        assert_eq!(r.corpus.records()[0].text, "Masks, tests, and care");
        assert_eq!(r.corpus.records()[1].text, "open up, now");
        assert_eq!(r.rejects.len(), 1);
        assert_eq!(r.rejects[0].line, 4);
    }

    #[test]
    fn timestamps_normalize_to_utc() {
        let z = parse_timestamp("2020-03-02T13:00:00Z").unwrap();
        assert_eq!(parse_timestamp("2020-03-02T08:00:00-05:00"), Some(z));
        assert_eq!(parse_timestamp("2020-03-02 13:00:00"), Some(z));
        assert_eq!(parse_timestamp("2020-03-02T13:00:00.750"), Some(z));
        assert_eq!(format_timestamp(z), "2020-03-02T13:00:00Z");
        assert_eq!(parse_timestamp("yesterday"), None);
    }

    #[test]
    fn date_range_rejects() {
        let range = DateRange {
            from: parse_timestamp("2020-03-02"),
            to: None,
        };
        let r = ingest(FIXTURE.as_bytes(), InputFormat::Jsonl, "t", &range).unwrap();
        assert_eq!(r.corpus.ids().collect::<Vec<_>>(), ["3", "5"]);
        assert_eq!(r.rejects.len(), 3);
    }
}
