use std::collections::BTreeMap;

use chrono::Datelike;
use serde::{Deserialize, Serialize};

use super::TimeSeries;

/// Validity predicates applied to every present value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QualityPolicy {
    /// Values below this are invalid.
    pub min_value: f64,
    /// Optional plausibility ceiling; values above it are invalid.
    pub ceiling: Option<f64>,
}

impl Default for QualityPolicy {
    fn default() -> Self {
        Self {
            min_value: 0.0,
            ceiling: None,
        }
    }
}

impl QualityPolicy {
    pub fn accepts(&self, v: f64) -> bool {
        v.is_finite() && v >= self.min_value && self.ceiling.map_or(true, |c| v <= c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    /// Present values before filtering.
    pub raw_count: usize,
    pub retained_count: usize,
    /// `retained_count / raw_count` (1.0 for an empty input).
    pub retention_fraction: f64,
    /// Calendar slots spanned by the series.
    pub calendar_slots: usize,
    /// `retained_count / calendar_slots`.
    pub calendar_retention: f64,
    /// Retained values over calendar slots, per year.
    pub per_year_coverage: BTreeMap<i32, f64>,
}

/// Masks values failing `policy`. Passing values are never modified.
pub fn quality_filter(series: &TimeSeries, policy: &QualityPolicy) -> (TimeSeries, FilterReport) {
    let values: Vec<Option<f64>> = series
        .values()
        .iter()
        .map(|v| v.filter(|&x| policy.accepts(x)))
        .collect();
    let raw_count = series.present_count();
    let retained_count = values.iter().filter(|v| v.is_some()).count();

    let mut retained_per_year: BTreeMap<i32, usize> = BTreeMap::new();
    for (i, v) in values.iter().enumerate() {
        if v.is_some() {
            *retained_per_year.entry(series.date_at(i).year()).or_default() += 1;
        }
    }
    let per_year_coverage = series
        .slots_per_year()
        .into_iter()
        .map(|(year, slots)| {
            let kept = retained_per_year.get(&year).copied().unwrap_or(0);
            (year, kept as f64 / slots as f64)
        })
        .collect();

    let ratio = |num: usize, den: usize| if den == 0 { 1.0 } else { num as f64 / den as f64 };
    let report = FilterReport {
        raw_count,
        retained_count,
        retention_fraction: ratio(retained_count, raw_count),
        calendar_slots: series.len(),
        calendar_retention: ratio(retained_count, series.len()),
        per_year_coverage,
    };
    let filtered = TimeSeries {
        name: series.name.clone(),
        start: series.start,
        values,
    };
    (filtered, report)
}
