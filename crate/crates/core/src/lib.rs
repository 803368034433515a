//! Leakage-safe multi-step forecast backtesting.
//!
//! `skillhorizon` evaluates daily forecasting models against a lag-1
//! persistence reference under static chronological splits and
//! rolling-origin (expanding window, monthly fold) protocols. Skill is
//! reported per horizon as `1 - err_model / err_persistence`, together with
//! the predictability horizon: the largest lead time with positive skill.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: calendar-indexed daily series, CSV ingestion, quality
//!   filtering, summary statistics and calendar features.
//! - [`models`]: persistence, seasonal-naive, SARIMA (exact state-space
//!   likelihood) and gradient-boosted trees with direct multi-horizon
//!   prediction.
//! - [`protocol`]: fold planning, train-only preprocessing and the runner
//!   producing a [`protocol::ForecastRecordSet`].
//! - [`metrics`]: RMSE/MAE, skill, predictability horizon and per-fold
//!   skill distributions.
//! - [`synth`]: a seeded generator of PM10-like series and closed-form
//!   AR(1) skill oracles.
//! - [`app`]: the run configuration and the artifact writers behind the
//!   `skillhorizon` binary.
//!
//! # Example
//!
//! ```
//! use skillhorizon::metrics::{h_star, skill};
//!
//! let ss: Vec<f64> = [(7.5, 10.0), (9.0, 10.0), (10.5, 10.0)]
//!     .iter()
//!     .map(|&(m, p)| skill(m, p).unwrap())
//!     .collect();
//! assert!((ss[0] - 0.25).abs() < 1e-12);
//! assert_eq!(h_star(&ss), (2, 2));
//! ```
#![forbid(unsafe_code)]

pub mod app;
mod error;
pub mod metrics;
pub mod models;
pub mod optim;
pub mod protocol;
pub mod series;
pub mod synth;

pub use error::{Error, Result};
pub use models::{ForecastVector, ForecasterSpec};
pub use series::TimeSeries;

/// Default maximum forecast horizon in days.
pub const DEFAULT_H_MAX: usize = 7;
