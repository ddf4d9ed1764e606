//! Series and chart-spec ingestion.
//!
//! CSV: two columns, `YYYY-MM-DD` date and decimal value, optional header row.
//! JSON: `{"points": [{"t": "YYYY-MM-DD", "y": 1.5}], "name": "..."}`.

use std::path::Path;

use chrono::NaiveDate;

use crate::chart::{ChartSpec, Sample, TimeSeries};
use crate::error::{Error, Result};

/// Upper bound on accepted series length.
pub const MAX_POINTS: usize = 1_000_000;

fn parse_date(s: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").ok()
}

/// Parses a two-column CSV series. Rows and columns in errors are 1-based.
pub fn series_from_csv(text: &str, limit: usize) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut points: Vec<Sample> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Malformed(e.to_string()))?;
        let row = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let date_field = record.get(0).unwrap_or("");
        let Some(t) = parse_date(date_field) else {
            if points.is_empty() && i == 0 {
                // header row
                continue;
            }
            return Err(Error::Parse {
                row,
                column: 1,
                message: format!("invalid date {date_field:?}, expected YYYY-MM-DD"),
            });
        };
        let value_field = record.get(1).ok_or_else(|| Error::Parse {
            row,
            column: 2,
            message: "missing value column".into(),
        })?;
        let y: f64 = value_field
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Error::Parse {
                row,
                column: 2,
                message: format!("invalid value {value_field:?}"),
            })?;
        if let Some(prev) = points.last() {
            if prev.t >= t {
                return Err(Error::Parse {
                    row,
                    column: 1,
                    message: format!("date {t} does not follow {}", prev.t),
                });
            }
        }
        if points.len() == limit {
            return Err(Error::TooLarge {
                count: limit + 1,
                limit,
            });
        }
        points.push(Sample { t, y });
    }
    if points.is_empty() {
        return Err(Error::Malformed("no data rows".into()));
    }
    TimeSeries::new(points, None)
}

/// Parses a JSON series document.
pub fn series_from_json(text: &str, limit: usize) -> Result<TimeSeries> {
    let series: TimeSeries = serde_json::from_str(text).map_err(|e| Error::Parse {
        row: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if series.len() > limit {
        return Err(Error::TooLarge {
            count: series.len(),
            limit,
        });
    }
    Ok(series)
}

/// Parses either format; a body starting with `{` is JSON.
pub fn parse_series(text: &str, limit: usize) -> Result<TimeSeries> {
    let text = text.trim_start_matches('\u{feff}');
    if text.trim().is_empty() {
        return Err(Error::Malformed("empty body".into()));
    }
    if text.trim_start().starts_with('{') {
        series_from_json(text, limit)
    } else {
        series_from_csv(text, limit)
    }
}

pub fn read_series(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    parse_series(&text, MAX_POINTS)
}

pub fn parse_spec(text: &str) -> Result<ChartSpec> {
    serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
}

pub fn read_spec(path: impl AsRef<Path>) -> Result<ChartSpec> {
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    parse_spec(&text)
}
