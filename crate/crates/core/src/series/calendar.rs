use std::f64::consts::TAU;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use super::TimeSeries;

/// Calendar features of one date.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalendarRow {
    pub date: NaiveDate,
    /// Monday = 0.
    pub day_of_week: u32,
    /// January = 1.
    pub month: u32,
    pub doy_sin: f64,
    pub doy_cos: f64,
}

impl CalendarRow {
    pub const NAMES: [&'static str; 4] = ["day_of_week", "month", "doy_sin", "doy_cos"];

    pub fn as_features(&self) -> [f64; 4] {
        [
            self.day_of_week as f64,
            self.month as f64,
            self.doy_sin,
            self.doy_cos,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureTable {
    pub rows: Vec<CalendarRow>,
}

pub fn calendar_row(date: NaiveDate) -> CalendarRow {
    let days_in_year = if date.leap_year() { 366.0 } else { 365.0 };
    let angle = TAU * date.ordinal() as f64 / days_in_year;
    CalendarRow {
        date,
        day_of_week: date.weekday().num_days_from_monday(),
        month: date.month(),
        doy_sin: angle.sin(),
        doy_cos: angle.cos(),
    }
}

/// One row per slot; depends on the dates only.
pub fn calendar_features(series: &TimeSeries) -> FeatureTable {
    FeatureTable {
        rows: series.iter().map(|(date, _)| calendar_row(date)).collect(),
    }
}
