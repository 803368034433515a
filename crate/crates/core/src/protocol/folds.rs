use chrono::{Datelike, Duration, Months, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::series::TimeSeries;
use crate::{Error, Result};

/// Default minimum number of usable horizon-1 pairs for a monthly fold.
pub const DEFAULT_MIN_TEST: usize = 15;

/// One evaluation unit: train on everything before `train_end`, forecast
/// from every origin in `[test_start, test_end]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSpec {
    pub fold_id: usize,
    /// Exclusive end of the training range.
    pub train_end: NaiveDate,
    pub test_start: NaiveDate,
    /// Inclusive.
    pub test_end: NaiveDate,
    /// Origins with a present lag-1 value and a present horizon-1 target.
    pub valid_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedFold {
    pub test_start: NaiveDate,
    pub valid_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub initial_train_end: NaiveDate,
    pub folds: Vec<FoldSpec>,
    pub h_max: usize,
    pub min_test: usize,
    /// Months removed by the minimum test-size rule.
    pub dropped: Vec<DroppedFold>,
}

impl FoldPlan {
    /// A single fold, as used for a static chronological split.
    pub fn single(series: &TimeSeries, boundary: NaiveDate, h_max: usize) -> Result<Self> {
        check_boundary(series, boundary)?;
        let fold = FoldSpec {
            fold_id: 0,
            train_end: boundary,
            test_start: boundary,
            test_end: series.end_date(),
            valid_pairs: count_valid_origins(series, boundary, series.end_date()),
        };
        if fold.valid_pairs == 0 {
            return Err(Error::Plan("static test segment has no usable origins".into()));
        }
        Ok(Self {
            initial_train_end: boundary,
            folds: vec![fold],
            h_max,
            min_test: 0,
            dropped: Vec::new(),
        })
    }
}

fn check_boundary(series: &TimeSeries, boundary: NaiveDate) -> Result<()> {
    if series.is_empty() || boundary <= series.start_date() || boundary > series.end_date() {
        return Err(Error::Range(format!(
            "boundary {boundary} must lie strictly after {} and not after {}",
            series.start_date(),
            series.end_date()
        )));
    }
    Ok(())
}

/// Origins in `[from, to]` with a present lag-1 value and a present value on
/// the origin itself (the horizon-1 target).
pub fn count_valid_origins(series: &TimeSeries, from: NaiveDate, to: NaiveDate) -> usize {
    let mut d = from;
    let mut n = 0;
    while d <= to {
        if series.value_on(d - Duration::days(1)).is_some() && series.value_on(d).is_some() {
            n += 1;
        }
        d += Duration::days(1);
    }
    n
}

/// Splits at `boundary`: train is every date before it, test the rest.
pub fn static_split(series: &TimeSeries, boundary: NaiveDate) -> Result<(TimeSeries, TimeSeries)> {
    check_boundary(series, boundary)?;
    Ok((series.before(boundary), series.from_date(boundary)))
}

fn first_of_month(d: NaiveDate) -> NaiveDate {
    NaiveDate::from_ymd_opt(d.year(), d.month(), 1).expect("valid first of month")
}

/// One expanding-window fold per calendar month, starting with the first
/// month that begins on or after `initial_train_end`.
pub fn rolling_folds(series: &TimeSeries, initial_train_end: NaiveDate, h_max: usize, min_test: usize) -> Result<FoldPlan> {
    if h_max == 0 {
        return Err(Error::Plan("h_max must be >= 1".into()));
    }
    if series.is_empty() || initial_train_end <= series.start_date() || initial_train_end > series.end_date() {
        return Err(Error::Plan(format!(
            "initial_train_end {initial_train_end} outside ({}, {}]",
            series.start_date(),
            series.end_date()
        )));
    }
    let mut month = first_of_month(initial_train_end);
    if month < initial_train_end {
        month = month + Months::new(1);
    }
    let mut folds = Vec::new();
    let mut dropped = Vec::new();
    while month <= series.end_date() {
        let next = month + Months::new(1);
        let test_end = (next - Duration::days(1)).min(series.end_date());
        let valid_pairs = count_valid_origins(series, month, test_end);
        if valid_pairs >= min_test.max(1) {
            folds.push(FoldSpec {
                fold_id: folds.len(),
                train_end: month,
                test_start: month,
                test_end,
                valid_pairs,
            });
        } else {
            dropped.push(DroppedFold {
                test_start: month,
                valid_pairs,
            });
        }
        month = next;
    }
    if folds.is_empty() {
        return Err(Error::Plan("no fold meets the minimum test size".into()));
    }
    Ok(FoldPlan {
        initial_train_end,
        folds,
        h_max,
        min_test,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(y: i32, m: u32, day: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, day).unwrap()
    }

    fn daily(from: NaiveDate, to: NaiveDate) -> TimeSeries {
        let n = (to - from).num_days() as usize + 1;
        TimeSeries::from_values("t", from, &vec![10.0; n]).unwrap()
    }

    #[test]
    fn forty_eight_months() {
        let s = daily(d(2017, 1, 1), d(2023, 12, 31));
        let plan = rolling_folds(&s, d(2020, 1, 1), 7, DEFAULT_MIN_TEST).unwrap();
        assert_eq!(plan.folds.len(), 48);
        assert_eq!(plan.folds[0].test_start, d(2020, 1, 1));
        assert_eq!(plan.folds[47].test_end, d(2023, 12, 31));
        assert!(plan.folds.windows(2).all(|w| w[0].train_end < w[1].train_end));
        assert_eq!(plan.folds[1].valid_pairs, 29);
    }

    #[test]
    fn sparse_month_is_dropped() {
        let s = daily(d(2017, 1, 1), d(2023, 12, 31));
        let start = s.index_of(d(2021, 6, 5)).unwrap();
        let mut s2 = s.clone();
        for i in start..start + 20 {
            s2 = s2.with_value(i, None).unwrap();
        }
        let plan = rolling_folds(&s2, d(2020, 1, 1), 7, DEFAULT_MIN_TEST).unwrap();
        assert_eq!(plan.folds.len(), 47);
        assert_eq!(plan.dropped.len(), 1);
        assert_eq!(plan.dropped[0].test_start, d(2021, 6, 1));
        assert!(plan.folds.iter().all(|f| f.test_start != d(2021, 6, 1)));
    }

    #[test]
    fn mid_month_start_skips_to_next_month() {
        let s = daily(d(2019, 1, 1), d(2019, 6, 30));
        let plan = rolling_folds(&s, d(2019, 3, 15), 7, 1).unwrap();
        assert_eq!(plan.folds[0].train_end, d(2019, 4, 1));
        assert_eq!(plan.folds.len(), 3);
    }

    #[test]
    fn plan_errors() {
        let s = daily(d(2019, 1, 1), d(2019, 6, 30));
        assert!(matches!(rolling_folds(&s, d(2020, 1, 1), 7, 15), Err(Error::Plan(_))));
        assert!(matches!(rolling_folds(&s, d(2019, 6, 20), 7, 15), Err(Error::Plan(_))));
    }

    #[test]
    fn static_split_counts() {
        let s = daily(d(2020, 1, 1), d(2020, 1, 10));
        let (train, test) = static_split(&s, d(2020, 1, 8)).unwrap();
        assert_eq!((train.len(), test.len()), (7, 3));
        assert!(matches!(static_split(&s, d(2020, 1, 1)), Err(Error::Range(_))));
        assert!(static_split(&s, d(2020, 2, 1)).is_err());
        let plan = FoldPlan::single(&s, d(2020, 1, 8), 3).unwrap();
        assert_eq!(plan.folds[0].valid_pairs, 3);
    }
}
