use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::series::TimeSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreprocKind {
    #[default]
    None,
    /// `(y - mean) / sd` with population statistics.
    Standardize,
    /// `ln(1 + y)`.
    Log1p,
}

/// A transform whose parameters were estimated on one training range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocSpec {
    pub kind: PreprocKind,
    pub mean: f64,
    pub scale: f64,
    /// Inclusive date range of the data the parameters came from.
    pub fitted_on: Option<(NaiveDate, NaiveDate)>,
}

impl PreprocSpec {
    pub fn identity() -> Self {
        Self {
            kind: PreprocKind::None,
            mean: 0.0,
            scale: 1.0,
            fitted_on: None,
        }
    }

    pub fn apply(&self, y: f64) -> f64 {
        match self.kind {
            PreprocKind::None => y,
            PreprocKind::Standardize => (y - self.mean) / self.scale,
            PreprocKind::Log1p => y.ln_1p(),
        }
    }

    pub fn invert(&self, z: f64) -> f64 {
        match self.kind {
            PreprocKind::None => z,
            PreprocKind::Standardize => z * self.scale + self.mean,
            PreprocKind::Log1p => z.exp_m1(),
        }
    }

    pub fn apply_series(&self, series: &TimeSeries) -> Result<TimeSeries> {
        series.map_present(|y| self.apply(y))
    }
}

/// Estimates transform parameters from `train` alone.
pub fn fit_preprocessor(train: &TimeSeries, kind: PreprocKind) -> Result<PreprocSpec> {
    let values = train.present_values();
    let fitted_on = (!train.is_empty()).then(|| (train.start_date(), train.end_date()));
    match kind {
        PreprocKind::None => Ok(PreprocSpec {
            fitted_on,
            ..PreprocSpec::identity()
        }),
        PreprocKind::Standardize => {
            if values.is_empty() {
                return Err(Error::EmptyInput("standardize needs training values".into()));
            }
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
            if !(sd > 0.0) {
                return Err(Error::DegenerateScale);
            }
            Ok(PreprocSpec {
                kind,
                mean,
                scale: sd,
                fitted_on,
            })
        }
        PreprocKind::Log1p => {
            if values.is_empty() {
                return Err(Error::EmptyInput("log1p needs training values".into()));
            }
            if let Some(v) = values.iter().find(|v| **v <= -1.0) {
                return Err(Error::Domain(format!("log1p undefined for {v}")));
            }
            Ok(PreprocSpec {
                kind,
                fitted_on,
                ..PreprocSpec::identity()
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[f64]) -> TimeSeries {
        TimeSeries::from_values("t", NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(), v).unwrap()
    }

    #[test]
    fn standardize_arithmetic() {
        let spec = fit_preprocessor(&series(&[15.0, 25.0]), PreprocKind::Standardize).unwrap();
        assert_eq!((spec.mean, spec.scale), (20.0, 5.0));
        assert_eq!(spec.apply(25.0), 1.0);
        assert_eq!(spec.invert(1.0), 25.0);
    }

    #[test]
    fn identity_and_log1p() {
        let none = fit_preprocessor(&series(&[1.0]), PreprocKind::None).unwrap();
        assert_eq!(none.apply(3.5), 3.5);
        let log = fit_preprocessor(&series(&[1.0, 2.0]), PreprocKind::Log1p).unwrap();
        assert!((log.invert(log.apply(49.0)) - 49.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_scale() {
        assert!(matches!(
            fit_preprocessor(&series(&[4.0, 4.0, 4.0]), PreprocKind::Standardize),
            Err(Error::DegenerateScale)
        ));
    }

    #[test]
    fn fitted_range_is_recorded() {
        let s = series(&[1.0, 2.0, 3.0]);
        let spec = fit_preprocessor(&s.before(s.date_at(2)), PreprocKind::Standardize).unwrap();
        assert_eq!(spec.fitted_on, Some((s.date_at(0), s.date_at(1))));
        assert_eq!(spec.mean, 1.5);
    }
}
