use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::{Duration, NaiveDate};
use serde::{Deserialize, Serialize};

use super::TimeSeries;
use crate::{Error, Result};

const DATE_FORMAT: &str = "%Y-%m-%d";

/// Column layout of a daily CSV export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CsvSpec {
    pub date_column: String,
    pub value_column: String,
    /// Field delimiter, a single ASCII character.
    pub delimiter: char,
    /// Reject negative concentrations while reading.
    pub reject_negative: bool,
}

impl Default for CsvSpec {
    fn default() -> Self {
        Self {
            date_column: "date".into(),
            value_column: "value".into(),
            delimiter: ',',
            reject_negative: true,
        }
    }
}

impl CsvSpec {
    pub fn new(date_column: impl Into<String>, value_column: impl Into<String>) -> Self {
        Self {
            date_column: date_column.into(),
            value_column: value_column.into(),
            ..Self::default()
        }
    }

    fn delimiter_byte(&self) -> Result<u8> {
        u8::try_from(self.delimiter)
            .ok()
            .filter(u8::is_ascii)
            .ok_or_else(|| Error::Config(format!("delimiter {:?} is not ASCII", self.delimiter)))
    }
}

/// Loads a CSV file into a gap-free daily series.
pub fn load_csv(path: impl AsRef<Path>, spec: &CsvSpec) -> Result<TimeSeries> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.value_column.clone());
    read_csv(file, spec, name)
}

/// Reads CSV rows from any reader. Dates missing from the input become
/// missing slots; row order does not matter.
pub fn read_csv(reader: impl Read, spec: &CsvSpec, name: impl Into<String>) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(spec.delimiter_byte()?)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let column = |want: &str| {
        headers.iter().position(|h| h == want).ok_or_else(|| Error::Format {
            line: 1,
            msg: format!("missing column {want:?}"),
        })
    };
    let date_col = column(&spec.date_column)?;
    let value_col = column(&spec.value_column)?;

    let mut rows: BTreeMap<NaiveDate, Option<f64>> = BTreeMap::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let raw_date = record.get(date_col).unwrap_or("");
        let date = NaiveDate::parse_from_str(raw_date, DATE_FORMAT).map_err(|e| Error::Format {
            line,
            msg: format!("bad date {raw_date:?}: {e}"),
        })?;
        let raw_value = record.get(value_col).unwrap_or("");
        let value = if raw_value.is_empty() {
            None
        } else {
            let v: f64 = raw_value.parse().map_err(|e| Error::Format {
                line,
                msg: format!("bad value {raw_value:?}: {e}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Format {
                    line,
                    msg: format!("non-finite value {raw_value:?}"),
                });
            }
            if spec.reject_negative && v < 0.0 {
                return Err(Error::Domain(format!("negative concentration {v} on {date}")));
            }
            Some(v)
        };
        if let Some(prev) = rows.insert(date, value) {
            if prev != value {
                return Err(Error::Duplicate { date });
            }
        }
    }

    let (Some((&first, _)), Some((&last, _))) = (rows.first_key_value(), rows.last_key_value()) else {
        return Err(Error::EmptyInput("CSV has no data rows".into()));
    };
    let n = (last - first).num_days() as usize + 1;
    let mut values = vec![None; n];
    for (date, v) in rows {
        values[(date - first).num_days() as usize] = v;
    }
    TimeSeries::new(name, first, values)
}

/// Writes every slot as one row; missing values are empty cells.
pub fn write_csv(series: &TimeSeries, writer: impl Write, spec: &CsvSpec) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .delimiter(spec.delimiter_byte()?)
        .from_writer(writer);
    wtr.write_record([spec.date_column.as_str(), spec.value_column.as_str()])?;
    for (i, v) in series.values().iter().enumerate() {
        let date = (series.start_date() + Duration::days(i as i64))
            .format(DATE_FORMAT)
            .to_string();
        let value = v.map(|x| x.to_string()).unwrap_or_default();
        wtr.write_record([date, value])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_csv_file(series: &TimeSeries, path: impl AsRef<Path>, spec: &CsvSpec) -> Result<()> {
    write_csv(series, File::create(path)?, spec)
}
