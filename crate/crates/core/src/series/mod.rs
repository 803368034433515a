//! Daily observation series and everything that touches raw data.

mod calendar;
mod csv_io;
mod quality;
mod stats;

use chrono::{Datelike, Duration, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use calendar::{calendar_features, calendar_row, CalendarRow, FeatureTable};
pub use csv_io::{load_csv, read_csv, write_csv, write_csv_file, CsvSpec};
pub use quality::{quality_filter, FilterReport, QualityPolicy};
pub use stats::{summary_stats, StatsReport, DEFAULT_EXCEEDANCE_THRESHOLD};

/// A calendar-indexed daily series.
///
/// Index `i` is the date `start + i days`. The index never has holes: a day
/// without an observation is an explicit `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    name: String,
    start: NaiveDate,
    values: Vec<Option<f64>>,
}

impl TimeSeries {
    /// Builds a series, rejecting non-finite values.
    pub fn new(name: impl Into<String>, start: NaiveDate, values: Vec<Option<f64>>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| matches!(v, Some(x) if !x.is_finite())) {
            return Err(Error::Domain(format!(
                "non-finite value at {}",
                start + Duration::days(i as i64)
            )));
        }
        Ok(Self {
            name: name.into(),
            start,
            values,
        })
    }

    /// Builds a gap-free series from plain values.
    pub fn from_values(name: impl Into<String>, start: NaiveDate, values: &[f64]) -> Result<Self> {
        Self::new(name, start, values.iter().map(|&v| Some(v)).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn start_date(&self) -> NaiveDate {
        self.start
    }

    /// Date of the last slot. For an empty series this is the day before
    /// `start_date`.
    pub fn end_date(&self) -> NaiveDate {
        self.start + Duration::days(self.values.len() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.values.get(i).copied().flatten()
    }

    pub fn date_at(&self, i: usize) -> NaiveDate {
        self.start + Duration::days(i as i64)
    }

    /// Signed day offset of `date` from the start.
    pub fn offset_of(&self, date: NaiveDate) -> i64 {
        (date - self.start).num_days()
    }

    /// Index of `date` if it falls inside the series.
    pub fn index_of(&self, date: NaiveDate) -> Option<usize> {
        let off = self.offset_of(date);
        (off >= 0 && (off as usize) < self.values.len()).then_some(off as usize)
    }

    pub fn value_on(&self, date: NaiveDate) -> Option<f64> {
        self.index_of(date).and_then(|i| self.get(i))
    }

    pub fn present_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Present values in date order.
    pub fn present_values(&self) -> Vec<f64> {
        self.values.iter().flatten().copied().collect()
    }

    /// `(date, value)` pairs for every slot.
    pub fn iter(&self) -> impl Iterator<Item = (NaiveDate, Option<f64>)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.date_at(i), *v))
    }

    /// The part of the series dated strictly before `date`.
    pub fn before(&self, date: NaiveDate) -> TimeSeries {
        let cut = self.offset_of(date).clamp(0, self.values.len() as i64) as usize;
        TimeSeries {
            name: self.name.clone(),
            start: self.start,
            values: self.values[..cut].to_vec(),
        }
    }

    /// The part of the series dated on or after `date`.
    pub fn from_date(&self, date: NaiveDate) -> TimeSeries {
        let cut = self.offset_of(date).clamp(0, self.values.len() as i64) as usize;
        TimeSeries {
            name: self.name.clone(),
            start: self.start + Duration::days(cut as i64),
            values: self.values[cut..].to_vec(),
        }
    }

    /// Copy with one slot replaced.
    pub fn with_value(&self, i: usize, value: Option<f64>) -> Result<TimeSeries> {
        let mut values = self.values.clone();
        *values
            .get_mut(i)
            .ok_or_else(|| Error::Range(format!("index {i} outside series of length {}", self.len())))? = value;
        TimeSeries::new(self.name.clone(), self.start, values)
    }

    /// Copy with every present value mapped through `f`.
    pub fn map_present(&self, f: impl Fn(f64) -> f64) -> Result<TimeSeries> {
        TimeSeries::new(
            self.name.clone(),
            self.start,
            self.values.iter().map(|v| v.map(&f)).collect(),
        )
    }

    /// Calendar years touched by the series, with the number of slots in each.
    pub(crate) fn slots_per_year(&self) -> Vec<(i32, usize)> {
        let mut out: Vec<(i32, usize)> = Vec::new();
        for (date, _) in self.iter() {
            match out.last_mut() {
                Some((y, n)) if *y == date.year() => *n += 1,
                _ => out.push((date.year(), 1)),
            }
        }
        out
    }
}
