//! Catalog ingestion: one customer per file, one record per item.
//!
//! CSV files carry the header `item_id,rating,profit`; JSON files hold an
//! array of `{item_id, rating, profit}` objects. Every validation error names
//! the offending line (CSV) or record (JSON) and field.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CSV_HEADER: [&str; 3] = ["item_id", "rating", "profit"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRecord {
    pub item_id: String,
    pub rating: f64,
    pub profit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(u64),
    Record(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Line(n) => write!(f, "line {n}"),
            Self::Record(n) => write!(f, "record {n}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{location}: parse error: {reason}")]
    Parse { location: Location, reason: String },
    #[error("{location}: invalid {field}: {reason}")]
    Validation {
        location: Location,
        field: &'static str,
        reason: String,
    },
    #[error("input holds no records")]
    EmptyInput,
}

pub fn ingest(
    path: &Path,
    format: Format,
    max_rating: f64,
) -> Result<Vec<CatalogRecord>, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, format, max_rating)
}

pub fn parse(
    text: &str,
    format: Format,
    max_rating: f64,
) -> Result<Vec<CatalogRecord>, IngestError> {
    let located = match format {
        Format::Csv => parse_csv(text)?,
        Format::Json => parse_json(text)?,
    };
    if located.is_empty() {
        return Err(IngestError::EmptyInput);
    }
    let mut seen = HashSet::new();
    for (location, rec) in &located {
        validate(rec, *location, max_rating)?;
        if !seen.insert(rec.item_id.as_str()) {
            return Err(IngestError::Validation {
                location: *location,
                field: "item_id",
                reason: format!("duplicate id {:?}", rec.item_id),
            });
        }
    }
    Ok(located.into_iter().map(|(_, r)| r).collect())
}

fn validate(rec: &CatalogRecord, location: Location, max_rating: f64) -> Result<(), IngestError> {
    let fail = |field, reason: String| {
        Err(IngestError::Validation {
            location,
            field,
            reason,
        })
    };
    if rec.item_id.trim().is_empty() {
        return fail("item_id", "empty".into());
    }
    if !(rec.rating.is_finite() && (0.0..=max_rating).contains(&rec.rating)) {
        return fail(
            "rating",
            format!("{} is outside [0, {max_rating}]", rec.rating),
        );
    }
    if !(rec.profit.is_finite() && rec.profit > 0.0) {
        return fail("profit", format!("{} is not positive", rec.profit));
    }
    Ok(())
}

fn parse_csv(text: &str) -> Result<Vec<(Location, CatalogRecord)>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| IngestError::Parse {
        location: Location::Line(1),
        reason: e.to_string(),
    })?;
    if header.iter().ne(CSV_HEADER) {
        return Err(IngestError::Parse {
            location: Location::Line(1),
            reason: format!("expected header {:?}", CSV_HEADER.join(",")),
        });
    }

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| IngestError::Parse {
            location: Location::Line(e.position().map_or(0, |p| p.line())),
            reason: e.to_string(),
        })?;
        let location = Location::Line(row.position().map_or(0, |p| p.line()));
        let number = |idx: usize, field: &'static str| {
            row[idx]
                .parse::<f64>()
                .map_err(|e| IngestError::Validation {
                    location,
                    field,
                    reason: format!("{:?}: {e}", &row[idx]),
                })
        };
        out.push((
            location,
            CatalogRecord {
                item_id: row[0].to_string(),
                rating: number(1, "rating")?,
                profit: number(2, "profit")?,
            },
        ));
    }
    Ok(out)
}

fn parse_json(text: &str) -> Result<Vec<(Location, CatalogRecord)>, IngestError> {
    let records: Vec<CatalogRecord> =
        serde_json::from_str(text).map_err(|e| IngestError::Parse {
            location: Location::Line(e.line() as u64),
            reason: e.to_string(),
        })?;
    Ok(records
        .into_iter()
        .enumerate()
        .map(|(i, r)| (Location::Record(i + 1), r))
        .collect())
}

/// Serializes records in `format`; [`parse`] reads the result back unchanged.
pub fn emit(records: &[CatalogRecord], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in records {
                w.write_record([
                    r.item_id.clone(),
                    r.rating.to_string(),
                    r.profit.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        Format::Json => serde_json::to_string_pretty(records).expect("records serialize"),
    }
}
