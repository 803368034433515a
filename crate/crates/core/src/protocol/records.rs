use std::io::{Read, Write};
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::{FoldPlan, PreprocKind};
use crate::models::ForecasterSpec;
use crate::{Error, Result};

/// Column order of the records interchange file.
pub const RECORD_COLUMNS: [&str; 7] = ["fold_id", "origin_date", "h", "model_tag", "forecast", "persistence", "actual"];

/// One matched forecast: horizon `h` issued at `origin_date` targets
/// `origin_date + (h - 1)` days.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastRecord {
    pub fold_id: usize,
    pub origin_date: NaiveDate,
    pub h: usize,
    pub model_tag: String,
    pub forecast: f64,
    pub persistence: f64,
    pub actual: f64,
}

impl ForecastRecord {
    pub fn target_date(&self) -> NaiveDate {
        self.origin_date + chrono::Duration::days(self.h as i64 - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldFailure {
    pub fold_id: usize,
    pub kind: String,
    pub message: String,
}

/// Origins and pairs that produced no record.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipCounts {
    /// Origins whose lag-1 value is missing.
    pub origins_without_persistence: usize,
    /// Origins where the model could not form its inputs (e.g. a missing lag).
    pub origins_without_features: usize,
    /// (origin, h) pairs whose target is missing.
    pub missing_actuals: usize,
    /// (origin, h) pairs whose target lies past the series end.
    pub beyond_end: usize,
}

impl SkipCounts {
    pub fn add(&mut self, other: &SkipCounts) {
        self.origins_without_persistence += other.origins_without_persistence;
        self.origins_without_features += other.origins_without_features;
        self.missing_actuals += other.missing_actuals;
        self.beyond_end += other.beyond_end;
    }
}

/// How one model's records were produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunProvenance {
    pub model_tag: String,
    pub spec: ForecasterSpec,
    pub preproc: PreprocKind,
    pub plan: FoldPlan,
    /// Fitted parameters for models estimated once (SARIMA).
    pub fitted: Option<serde_json::Value>,
    pub fold_failures: Vec<FoldFailure>,
    pub skipped: SkipCounts,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ForecastRecordSet {
    pub records: Vec<ForecastRecord>,
    pub provenance: Vec<RunProvenance>,
}

impl ForecastRecordSet {
    /// Appends another set; tags must not collide.
    pub fn merge(&mut self, other: ForecastRecordSet) -> Result<()> {
        for p in &other.provenance {
            if self.provenance.iter().any(|q| q.model_tag == p.model_tag) {
                return Err(Error::Config(format!("duplicate model tag {}", p.model_tag)));
            }
        }
        self.records.extend(other.records);
        self.provenance.extend(other.provenance);
        Ok(())
    }

    /// Model tags in first-appearance order.
    pub fn tags(&self) -> Vec<String> {
        let mut out: Vec<String> = self.provenance.iter().map(|p| p.model_tag.clone()).collect();
        for r in &self.records {
            if !out.contains(&r.model_tag) {
                out.push(r.model_tag.clone());
            }
        }
        out
    }

    pub fn for_tag<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a ForecastRecord> + 'a {
        self.records.iter().filter(move |r| r.model_tag == tag)
    }
}

pub fn write_records<W: Write>(records: &[ForecastRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(RECORD_COLUMNS)?;
    for r in records {
        w.write_record([
            r.fold_id.to_string(),
            r.origin_date.to_string(),
            r.h.to_string(),
            r.model_tag.clone(),
            r.forecast.to_string(),
            r.persistence.to_string(),
            r.actual.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_records_file(records: &[ForecastRecord], path: &Path) -> Result<()> {
    write_records(records, std::io::BufWriter::new(std::fs::File::create(path)?))
}

pub fn read_records<R: Read>(reader: R) -> Result<Vec<ForecastRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != RECORD_COLUMNS {
        return Err(Error::Input(format!(
            "records header must be {}, got {}",
            RECORD_COLUMNS.join(","),
            header.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, row) in r.records().enumerate() {
        let row = row?;
        let line = i as u64 + 2;
        let bad = |col: &str| Error::Format {
            line,
            msg: format!("bad {col}"),
        };
        let num = |j: usize, col: &str| -> Result<f64> {
            row[j].parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(col))
        };
        out.push(ForecastRecord {
            fold_id: row[0].parse().map_err(|_| bad("fold_id"))?,
            origin_date: row[1].parse().map_err(|_| bad("origin_date"))?,
            h: row[2].parse().ok().filter(|h| *h >= 1).ok_or_else(|| bad("h"))?,
            model_tag: row[3].to_string(),
            forecast: num(4, "forecast")?,
            persistence: num(5, "persistence")?,
            actual: num(6, "actual")?,
        });
    }
    Ok(out)
}

pub fn read_records_file(path: &Path) -> Result<Vec<ForecastRecord>> {
    read_records(std::io::BufReader::new(std::fs::File::open(path)?))
}
