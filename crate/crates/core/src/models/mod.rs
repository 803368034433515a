//! Forecaster families sharing one contract: given the history strictly
//! before an origin date, produce forecasts for horizons `1..=h_max`, where
//! horizon `h` targets `origin + (h - 1)` days.

mod baseline;
pub mod gbt;
pub mod sarima;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use baseline::{persistence_forecast, seasonal_naive_forecast};
pub use gbt::{build_supervised, feature_row, gbt_fit, gbt_forecast, GbtHyper, GbtModel, SupervisedSet};
pub use sarima::{
    sarima_fit, sarima_forecast, sarima_loglik, sarima_order_select, OrderGrid, SarimaModel, SarimaOrder,
    SarimaParams,
};

/// Point forecasts issued at `origin_date`; `values[h - 1]` targets
/// `origin_date + (h - 1)` days.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastVector {
    pub origin_date: NaiveDate,
    pub values: Vec<f64>,
}

impl ForecastVector {
    pub(crate) fn new(origin_date: NaiveDate, values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!("non-finite forecast at origin {origin_date}")));
        }
        Ok(Self { origin_date, values })
    }

    pub fn h_max(&self) -> usize {
        self.values.len()
    }

    /// Forecast for horizon `h` (1-based).
    pub fn at(&self, h: usize) -> Option<f64> {
        h.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }
}

/// Model configuration, tagged by `kind` in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ForecasterSpec {
    /// Last observed value carried forward.
    Persistence,
    /// Value one full period before the target date.
    SeasonalNaive { period: usize },
    /// SARIMA with a fixed order.
    Sarima { order: SarimaOrder },
    /// SARIMA with the order picked by AICc on the initial training window.
    SarimaAuto {
        #[serde(default)]
        grid: OrderGrid,
    },
    /// Gradient-boosted trees, one ensemble per horizon.
    Gbt(GbtHyper),
}

impl ForecasterSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ForecasterSpec::Persistence => Ok(()),
            ForecasterSpec::SeasonalNaive { period } => {
                if *period == 0 {
                    Err(Error::Config("seasonal-naive period must be >= 1".into()))
                } else {
                    Ok(())
                }
            }
            ForecasterSpec::Sarima { order } => order.validate(),
            ForecasterSpec::SarimaAuto { grid } => {
                if grid.candidates().is_empty() {
                    return Err(Error::Config("empty SARIMA order grid".into()));
                }
                grid.candidates().iter().try_for_each(SarimaOrder::validate)
            }
            ForecasterSpec::Gbt(h) => h.validate(),
        }
    }

    /// Short family label.
    pub fn family(&self) -> &'static str {
        match self {
            ForecasterSpec::Persistence => "persistence",
            ForecasterSpec::SeasonalNaive { .. } => "seasonal_naive",
            ForecasterSpec::Sarima { .. } | ForecasterSpec::SarimaAuto { .. } => "sarima",
            ForecasterSpec::Gbt(_) => "gbt",
        }
    }
}
