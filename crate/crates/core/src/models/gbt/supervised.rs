use chrono::{Duration, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::series::{calendar_row, CalendarRow, TimeSeries};
use crate::{Error, Result};

/// Lagged-value and calendar design matrix with per-horizon targets.
///
/// Row `i` is the origin `origin_dates[i]`: feature `lag_k` is the value on
/// `origin - k` days, and `targets[h - 1][i]` is the value on
/// `origin + (h - 1)` days when present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupervisedSet {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub targets: Vec<Vec<Option<f64>>>,
    pub origin_dates: Vec<NaiveDate>,
}

impl SupervisedSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn h_max(&self) -> usize {
        self.targets.len()
    }

    /// Rows usable for horizon `h` (lag features and target present).
    pub fn rows_for(&self, h: usize) -> usize {
        self.targets[h - 1].iter().filter(|t| t.is_some()).count()
    }
}

pub fn feature_names(lags: &[usize], use_calendar: bool) -> Vec<String> {
    let mut names: Vec<String> = lags.iter().map(|k| format!("lag_{k}")).collect();
    if use_calendar {
        names.extend(CalendarRow::NAMES.iter().map(|s| s.to_string()));
    }
    names
}

/// Features for a forecast issued at `origin`; `None` when a lag is missing.
/// Only values dated before `origin` are read.
pub fn feature_row(series: &TimeSeries, origin: NaiveDate, lags: &[usize], use_calendar: bool) -> Option<Vec<f64>> {
    let mut row = Vec::with_capacity(lags.len() + 4);
    for &k in lags {
        row.push(series.value_on(origin - Duration::days(k as i64))?);
    }
    if use_calendar {
        row.extend(calendar_row(origin).as_features());
    }
    Some(row)
}

/// Builds one row per origin whose lag features are all present and which
/// has at least one present target. No imputation is performed.
pub fn build_supervised(series: &TimeSeries, lags: &[usize], h_max: usize, use_calendar: bool) -> Result<SupervisedSet> {
    if lags.is_empty() || lags.contains(&0) {
        return Err(Error::Domain("lags must be non-empty and >= 1".into()));
    }
    if h_max == 0 {
        return Err(Error::Domain("h_max must be >= 1".into()));
    }
    let max_lag = *lags.iter().max().unwrap_or(&1);
    if max_lag + h_max >= series.len() {
        return Err(Error::Data(format!(
            "series of length {} too short for max lag {max_lag} and horizon {h_max}",
            series.len()
        )));
    }
    let n = series.len();
    let mut out = SupervisedSet {
        feature_names: feature_names(lags, use_calendar),
        rows: Vec::new(),
        targets: vec![Vec::new(); h_max],
        origin_dates: Vec::new(),
    };
    for t in max_lag..n {
        let origin = series.date_at(t);
        let Some(row) = feature_row(series, origin, lags, use_calendar) else {
            continue;
        };
        let targets: Vec<Option<f64>> = (0..h_max).map(|j| series.get(t + j)).collect();
        if targets.iter().all(Option::is_none) {
            continue;
        }
        out.rows.push(row);
        out.origin_dates.push(origin);
        for (col, v) in out.targets.iter_mut().zip(targets) {
            col.push(v);
        }
    }
    if out.rows.is_empty() {
        return Err(Error::EmptyInput("no complete supervised rows".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn start() -> NaiveDate {
        NaiveDate::from_ymd_opt(2020, 1, 1).unwrap()
    }

    #[test]
    fn counts_complete_rows() {
        let v: Vec<f64> = (1..=10).map(f64::from).collect();
        let s = TimeSeries::from_values("t", start(), &v).unwrap();
        let set = build_supervised(&s, &[1, 2], 1, false).unwrap();
        // Origins 2..=9: two lags behind, target on the origin itself.
        assert_eq!(set.len(), 8);
        assert_eq!(set.origin_dates[0], s.date_at(2));
        assert_eq!(set.rows[0], vec![2.0, 1.0]);
        assert_eq!(set.targets[0][0], Some(3.0));
    }

    #[test]
    fn missing_value_removes_touching_rows() {
        let mut v: Vec<Option<f64>> = (1..=10).map(|x| Some(x as f64)).collect();
        v[5] = None;
        let s = TimeSeries::new("t", start(), v).unwrap();
        let set = build_supervised(&s, &[1], 1, false).unwrap();
        let origins: Vec<usize> = set.origin_dates.iter().map(|d| s.offset_of(*d) as usize).collect();
        // Origin 5 has a missing target, origin 6 a missing lag.
        assert_eq!(origins, vec![1, 2, 3, 4, 7, 8, 9]);
        assert!(set.rows.iter().flatten().all(|x| *x != 6.0));
    }

    #[test]
    fn partial_targets_are_kept_per_horizon() {
        let v: Vec<f64> = (1..=10).map(f64::from).collect();
        let s = TimeSeries::from_values("t", start(), &v).unwrap();
        let set = build_supervised(&s, &[1], 3, true).unwrap();
        assert_eq!(set.feature_names.len(), 5);
        assert_eq!(set.len(), 9);
        assert_eq!(set.rows_for(1), 9);
        assert_eq!(set.rows_for(3), 7);
    }

    #[test]
    fn too_short_or_empty() {
        let s = TimeSeries::from_values("t", start(), &[1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(build_supervised(&s, &[2], 1, false), Err(Error::Data(_))));
        let s = TimeSeries::new("t", start(), vec![Some(1.0), None, Some(1.0), None, Some(1.0), None]).unwrap();
        assert!(matches!(build_supervised(&s, &[1], 1, false), Err(Error::EmptyInput(_))));
    }
}
