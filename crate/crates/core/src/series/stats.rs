use serde::{Deserialize, Serialize};

use super::TimeSeries;
use crate::{Error, Result};

/// Daily limit value for PM10 in µg/m³.
pub const DEFAULT_EXCEEDANCE_THRESHOLD: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub max: f64,
    /// Share of present values strictly above `threshold`.
    pub exceedance_fraction: f64,
    pub threshold: f64,
}

/// Summary statistics over present values only.
pub fn summary_stats(series: &TimeSeries, threshold: f64) -> Result<StatsReport> {
    let mut v = series.present_values();
    if v.is_empty() {
        return Err(Error::EmptyInput("series has no present values".into()));
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let median = if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    };
    // Summing in sorted order keeps the mean independent of row order.
    let mean = v.iter().sum::<f64>() / n as f64;
    let exceed = v.iter().filter(|&&x| x > threshold).count();
    Ok(StatsReport {
        count: n,
        mean,
        median,
        max: v[n - 1],
        exceedance_fraction: exceed as f64 / n as f64,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn series(values: Vec<Option<f64>>) -> TimeSeries {
        TimeSeries::new("t", NaiveDate::from_ymd_opt(2023, 1, 1).unwrap(), values).unwrap()
    }

    #[test]
    fn constant_series() {
        let r = summary_stats(&series(vec![Some(7.0); 5]), 50.0).unwrap();
        assert_eq!((r.mean, r.median, r.max, r.exceedance_fraction), (7.0, 7.0, 7.0, 0.0));
    }

    #[test]
    fn ignores_missing_and_counts_exceedances() {
        let r = summary_stats(&series(vec![Some(10.0), None, Some(60.0), Some(20.0), Some(50.0)]), 50.0).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.median, 35.0);
        assert_eq!(r.max, 60.0);
        assert_eq!(r.exceedance_fraction, 0.25);
        assert!(r.median <= r.max && r.mean <= r.max);
    }

    #[test]
    fn empty_is_error() {
        assert!(matches!(summary_stats(&series(vec![None, None]), 50.0), Err(Error::EmptyInput(_))));
    }
}
