use chrono::Duration;

use super::ForecastVector;
use crate::series::TimeSeries;
use crate::{Error, Result};

fn last_present(history: &TimeSeries) -> Result<f64> {
    history
        .values()
        .iter()
        .rev()
        .find_map(|v| *v)
        .ok_or_else(|| Error::InsufficientHistory("no present value before the origin".into()))
}

fn origin_after(history: &TimeSeries) -> chrono::NaiveDate {
    history.start_date() + Duration::days(history.len() as i64)
}

/// Every horizon gets the most recent present observation in `history`.
/// The origin is the day after the last slot of `history`.
pub fn persistence_forecast(history: &TimeSeries, h_max: usize) -> Result<ForecastVector> {
    let last = last_present(history)?;
    ForecastVector::new(origin_after(history), vec![last; h_max])
}

/// Horizon `h` gets the observation a whole number of periods before its
/// target date (the nearest such date inside `history`). A missing lookup
/// falls back to persistence.
pub fn seasonal_naive_forecast(history: &TimeSeries, period: usize, h_max: usize) -> Result<ForecastVector> {
    if period == 0 {
        return Err(Error::Domain("seasonal period must be >= 1".into()));
    }
    let fallback = last_present(history)?;
    let n = history.len();
    let values = (1..=h_max)
        .map(|h| {
            let back = period * h.div_ceil(period);
            // Target index is n - 1 + h.
            (n - 1 + h)
                .checked_sub(back)
                .and_then(|j| history.get(j))
                .unwrap_or(fallback)
        })
        .collect();
    ForecastVector::new(origin_after(history), values)
}
