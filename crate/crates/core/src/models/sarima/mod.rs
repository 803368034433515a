//! Seasonal ARIMA estimated by exact Gaussian maximum likelihood.
//!
//! The series is differenced by `(1 - B)^d (1 - B^s)^D` first; the
//! differenced series (plus a constant mean when no differencing is applied)
//! follows a stationary, invertible ARMA process with multiplicative seasonal
//! polynomials. The likelihood comes from the prediction-error decomposition
//! of a Kalman filter started at the stationary distribution. Missing
//! observations skip the measurement update.

mod filter;
pub mod polynomial;
mod select;

use std::fmt;

use chrono::{Duration, NaiveDate};
use serde::{Deserialize, Serialize};

use self::filter::{innovation_sums, ArmaSystem, FilterState, Scratch};
use self::polynomial::{combined_ar, combined_ma, constrain_ar, constrain_ma, differencing, is_stationary};
use super::ForecastVector;
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::series::TimeSeries;
use crate::{Error, Result};

pub use select::{sarima_order_select, OrderGrid, SelectionOutcome};

/// `(p,d,q)(P,D,Q)_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SarimaOrder {
    pub p: usize,
    pub d: usize,
    pub q: usize,
    #[serde(rename = "P")]
    pub sp: usize,
    #[serde(rename = "D")]
    pub sd: usize,
    #[serde(rename = "Q")]
    pub sq: usize,
    pub s: usize,
}

impl Default for SarimaOrder {
    fn default() -> Self {
        Self {
            p: 0,
            d: 0,
            q: 0,
            sp: 0,
            sd: 0,
            sq: 0,
            s: 7,
        }
    }
}

impl fmt::Display for SarimaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})({},{},{})_{}",
            self.p, self.d, self.q, self.sp, self.sd, self.sq, self.s
        )
    }
}

impl SarimaOrder {
    /// Non-seasonal ARIMA order.
    pub fn arima(p: usize, d: usize, q: usize) -> Self {
        Self {
            p,
            d,
            q,
            ..Self::default()
        }
    }

    pub fn seasonal(p: usize, d: usize, q: usize, sp: usize, sd: usize, sq: usize, s: usize) -> Self {
        Self {
            p,
            d,
            q,
            sp,
            sd,
            sq,
            s,
        }
    }

    pub fn has_seasonal(&self) -> bool {
        self.sp + self.sd + self.sq > 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.has_seasonal() && self.s < 2 {
            return Err(Error::Config(format!("{self}: season length must be >= 2")));
        }
        Ok(())
    }

    /// A constant mean is estimated only for undifferenced models.
    pub fn has_mean(&self) -> bool {
        self.d == 0 && self.sd == 0
    }

    pub fn n_arma(&self) -> usize {
        self.p + self.q + self.sp + self.sq
    }

    /// Free coefficients (ARMA terms plus the mean).
    pub fn n_free(&self) -> usize {
        self.n_arma() + usize::from(self.has_mean())
    }

    /// Order of the differencing operator.
    pub fn diff_order(&self) -> usize {
        self.d + self.sd * self.s
    }
}

/// A complete parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SarimaParams {
    pub ar: Vec<f64>,
    pub ma: Vec<f64>,
    pub sar: Vec<f64>,
    pub sma: Vec<f64>,
    pub mean: f64,
    pub sigma2: f64,
}

impl SarimaParams {
    /// All coefficients zero, unit variance.
    pub fn zeros(order: &SarimaOrder) -> Self {
        Self {
            ar: vec![0.0; order.p],
            ma: vec![0.0; order.q],
            sar: vec![0.0; order.sp],
            sma: vec![0.0; order.sq],
            mean: 0.0,
            sigma2: 1.0,
        }
    }

    fn check(&self, order: &SarimaOrder) -> Result<()> {
        if self.ar.len() != order.p || self.ma.len() != order.q || self.sar.len() != order.sp || self.sma.len() != order.sq
        {
            return Err(Error::Domain(format!("parameter lengths do not match order {order}")));
        }
        if !(self.sigma2 > 0.0) || !self.sigma2.is_finite() {
            return Err(Error::Numeric(format!("innovation variance {}", self.sigma2)));
        }
        let neg = |v: &[f64]| v.iter().map(|c| -c).collect::<Vec<_>>();
        if !is_stationary(&self.ar) || !is_stationary(&self.sar) {
            return Err(Error::Domain("AR polynomial is not stationary".into()));
        }
        if !is_stationary(&neg(&self.ma)) || !is_stationary(&neg(&self.sma)) {
            return Err(Error::Domain("MA polynomial is not invertible".into()));
        }
        Ok(())
    }

    fn system(&self, order: &SarimaOrder) -> ArmaSystem {
        ArmaSystem::new(
            &combined_ar(&self.ar, &self.sar, order.s),
            &combined_ma(&self.ma, &self.sma, order.s),
        )
    }
}

/// Applies the differencing operator; a slot is missing when any input it
/// depends on is missing. Output index `t` corresponds to input `t + m`.
fn difference(values: &[Option<f64>], delta: &[f64]) -> Vec<Option<f64>> {
    let m = delta.len() - 1;
    if values.len() <= m {
        return Vec::new();
    }
    (m..values.len())
        .map(|t| {
            delta
                .iter()
                .enumerate()
                .try_fold(0.0, |acc, (j, c)| values[t - j].map(|y| acc + c * y))
        })
        .collect()
}

/// Exact Gaussian log-likelihood of the differenced series.
pub fn sarima_loglik(order: &SarimaOrder, params: &SarimaParams, series: &TimeSeries) -> Result<f64> {
    order.validate()?;
    params.check(order)?;
    let delta = differencing(order.d, order.sd, order.s);
    let w = difference(series.values(), &delta);
    if w.iter().all(Option::is_none) {
        return Err(Error::Data("no observations left after differencing".into()));
    }
    let mean = if order.has_mean() { params.mean } else { 0.0 };
    let demeaned: Vec<Option<f64>> = w.iter().map(|v| v.map(|x| x - mean)).collect();
    let sums = innovation_sums(&params.system(order), &demeaned)?;
    let ll = sums.loglik(params.sigma2);
    if ll.is_finite() {
        Ok(ll)
    } else {
        Err(Error::Numeric("non-finite log-likelihood".into()))
    }
}

/// A fitted model with its filter state at the end of the training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SarimaModel {
    pub order: SarimaOrder,
    pub params: SarimaParams,
    pub loglik: f64,
    /// Present observations of the differenced series.
    pub n_obs: usize,
    pub aicc: f64,
    pub iterations: usize,
    /// Day after the last training slot.
    pub origin_date: NaiveDate,
    state: TrackerState,
}

impl SarimaModel {
    /// Builds a model from known parameters and filters `history` through it.
    pub fn from_params(order: SarimaOrder, params: SarimaParams, history: &TimeSeries) -> Result<Self> {
        order.validate()?;
        params.check(&order)?;
        let loglik = sarima_loglik(&order, &params, history).unwrap_or(f64::NAN);
        let delta = differencing(order.d, order.sd, order.s);
        let n_obs = difference(history.values(), &delta).iter().flatten().count();
        let mut model = Self {
            order,
            params,
            loglik,
            n_obs,
            aicc: aicc(loglik, order.n_free() + 1, n_obs),
            iterations: 0,
            origin_date: history.start_date(),
            state: TrackerState::default(),
        };
        let mut tracker = model.tracker()?;
        history.values().iter().for_each(|v| tracker.push(*v));
        model.state = tracker.state;
        model.origin_date = history.start_date() + Duration::days(history.len() as i64);
        Ok(model)
    }

    /// Fresh filter with this model's parameters, positioned before the
    /// first observation.
    pub fn tracker(&self) -> Result<SarimaTracker> {
        SarimaTracker::new(self.order, self.params.clone())
    }

    /// Re-filters `history` with the fitted parameters held fixed and
    /// forecasts from the day after it.
    pub fn forecast_from(&self, history: &TimeSeries, h_max: usize) -> Result<ForecastVector> {
        let mut tracker = self.tracker()?;
        history.values().iter().for_each(|v| tracker.push(*v));
        let origin = history.start_date() + Duration::days(history.len() as i64);
        ForecastVector::new(origin, tracker.forecast(h_max))
    }

    /// Coefficients, variance and fit diagnostics as JSON.
    pub fn coefficients_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order.to_string(),
            "ar": self.params.ar,
            "ma": self.params.ma,
            "seasonal_ar": self.params.sar,
            "seasonal_ma": self.params.sma,
            "mean": self.params.mean,
            "innovation_variance": self.params.sigma2,
            "loglik": self.loglik,
            "aicc": self.aicc,
            "n_obs": self.n_obs,
        })
    }

    /// Full AR polynomial coefficients (`1 - sum c_i B^i`) including the
    /// seasonal factor.
    pub fn combined_ar(&self) -> Vec<f64> {
        combined_ar(&self.params.ar, &self.params.sar, self.order.s)
    }

    /// Full MA polynomial coefficients (`1 + sum c_i B^i`).
    pub fn combined_ma(&self) -> Vec<f64> {
        combined_ma(&self.params.ma, &self.params.sma, self.order.s)
    }
}

fn aicc(loglik: f64, k: usize, n: usize) -> f64 {
    let (k, n) = (k as f64, n as f64);
    if n - k - 1.0 <= 0.0 || !loglik.is_finite() {
        return f64::INFINITY;
    }
    -2.0 * loglik + 2.0 * k + 2.0 * k * (k + 1.0) / (n - k - 1.0)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
struct TrackerState {
    filter: Option<FilterState>,
    /// Original-scale values, with missing slots replaced by their one-step
    /// predictions; only the last `m` entries matter.
    filled: Vec<f64>,
    last_present: Option<f64>,
    steps: usize,
}

/// Runs the filter one day at a time with fixed parameters. Forecasts at
/// any point depend only on the values pushed so far.
#[derive(Debug, Clone)]
pub struct SarimaTracker {
    order: SarimaOrder,
    params: SarimaParams,
    system: ArmaSystem,
    delta: Vec<f64>,
    raw: Vec<Option<f64>>,
    scratch: Scratch,
    state: TrackerState,
}

impl SarimaTracker {
    fn new(order: SarimaOrder, params: SarimaParams) -> Result<Self> {
        let system = params.system(&order);
        let initial = system.initial_state()?;
        Ok(Self {
            delta: differencing(order.d, order.sd, order.s),
            order,
            params,
            system,
            raw: Vec::new(),
            scratch: Scratch::default(),
            state: TrackerState {
                filter: Some(initial),
                ..TrackerState::default()
            },
        })
    }

    fn mean(&self) -> f64 {
        if self.order.has_mean() {
            self.params.mean
        } else {
            0.0
        }
    }

    fn m(&self) -> usize {
        self.delta.len() - 1
    }

    /// Sum of `delta_j * y_{t-j}` for `j >= 1` over the filled history,
    /// where `t` is the next slot.
    fn integration_offset(&self, filled: &[f64]) -> f64 {
        let n = filled.len();
        self.delta[1..]
            .iter()
            .enumerate()
            .map(|(j, c)| c * filled[n - 1 - j])
            .sum()
    }

    /// Consumes the next day's observation.
    pub fn push(&mut self, y: Option<f64>) {
        let m = self.m();
        let t = self.state.steps;
        self.raw.push(y);
        if self.raw.len() > m + 1 {
            self.raw.remove(0);
        }
        let mu = self.mean();
        let filled = if t >= m {
            let st = self.state.filter.as_mut().expect("tracker state initialised");
            let predicted_y = mu + st.a[0] - {
                let f = &self.state.filled;
                let n = f.len();
                self.delta[1..]
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * f[n - 1 - j])
                    .sum::<f64>()
            };
            let w = self
                .delta
                .iter()
                .enumerate()
                .try_fold(0.0, |acc, (j, c)| self.raw[self.raw.len() - 1 - j].map(|v| acc + c * v));
            self.system.step(st, w.map(|x| x - mu), &mut self.scratch);
            y.unwrap_or(predicted_y)
        } else {
            y.or(self.state.last_present).unwrap_or(mu)
        };
        if y.is_some() {
            self.state.last_present = y;
        }
        self.state.filled.push(filled);
        if self.state.filled.len() > m.max(1) {
            self.state.filled.remove(0);
        }
        self.state.steps += 1;
    }

    /// Minimum-MSE forecasts for the next `h_max` days on the original scale.
    pub fn forecast(&self, h_max: usize) -> Vec<f64> {
        let m = self.m();
        let mu = self.mean();
        let st = self.state.filter.as_ref().expect("tracker state initialised");
        let w_hat = self.system.project(st, h_max);
        if self.state.steps < m {
            // Not enough data to difference yet.
            let last = self.state.last_present.unwrap_or(mu);
            return vec![last; h_max];
        }
        let mut filled = self.state.filled.clone();
        let mut out = Vec::with_capacity(h_max);
        for w in w_hat {
            let y = mu + w - if m == 0 { 0.0 } else { self.integration_offset(&filled) };
            out.push(y);
            filled.push(y);
        }
        out
    }

    pub fn steps(&self) -> usize {
        self.state.steps
    }
}

fn decode(order: &SarimaOrder, x: &[f64], center: f64, scale: f64) -> SarimaParams {
    let (mut i, o) = (0, order);
    let mut take = |n: usize| {
        let s = &x[i..i + n];
        i += n;
        s.to_vec()
    };
    let ar = constrain_ar(&take(o.p));
    let ma = constrain_ma(&take(o.q));
    let sar = constrain_ar(&take(o.sp));
    let sma = constrain_ma(&take(o.sq));
    let mean = if o.has_mean() { center + scale * take(1)[0] } else { 0.0 };
    SarimaParams {
        ar,
        ma,
        sar,
        sma,
        mean,
        sigma2: 1.0,
    }
}

/// Maximum-likelihood fit with the innovation variance concentrated out and
/// Nelder–Mead over unconstrained partial autocorrelations, restarted once
/// from a perturbed optimum.
pub fn sarima_fit(train: &TimeSeries, order: SarimaOrder) -> Result<SarimaModel> {
    order.validate()?;
    if order.diff_order() >= train.len() {
        return Err(Error::Data(format!(
            "{order}: differencing order {} needs more than {} slots",
            order.diff_order(),
            train.len()
        )));
    }
    let delta = differencing(order.d, order.sd, order.s);
    let w = difference(train.values(), &delta);
    let present: Vec<f64> = w.iter().flatten().copied().collect();
    let n_obs = present.len();
    let needed = 10 * order.n_free().max(1);
    if n_obs < needed {
        return Err(Error::Data(format!(
            "{order}: {n_obs} differenced observations, need at least {needed}"
        )));
    }
    let center = present.iter().sum::<f64>() / n_obs as f64;
    let var = present.iter().map(|v| (v - center).powi(2)).sum::<f64>() / n_obs as f64;
    let scale = var.sqrt().max(1e-8);

    let concentrated = |params: &SarimaParams| -> Result<(f64, f64)> {
        let demeaned: Vec<Option<f64>> = w.iter().map(|v| v.map(|x| x - params.mean)).collect();
        let sums = innovation_sums(&params.system(&order), &demeaned)?;
        let sigma2 = sums.sigma2_hat();
        if !(sigma2 > 0.0) {
            return Err(Error::Numeric("degenerate innovation variance".into()));
        }
        Ok((sums.loglik(sigma2), sigma2))
    };

    let k = order.n_free();
    let (x_best, iterations) = if order.n_arma() == 0 {
        // Mean and variance have closed forms.
        (vec![0.0; k], 0)
    } else {
        let objective = |x: &[f64]| -> f64 {
            concentrated(&decode(&order, x, center, scale)).map_or(f64::INFINITY, |(ll, _)| -ll)
        };
        let opts = NelderMeadOptions {
            max_iter: 500 * k,
            f_tol: 1e-8 * (n_obs as f64).max(1.0),
            x_tol: 1e-5,
            step: 0.2,
        };
        let first = nelder_mead(objective, &vec![0.0; k], &opts);
        let perturbed: Vec<f64> = first
            .x
            .iter()
            .enumerate()
            .map(|(i, v)| v + if i % 2 == 0 { 0.05 } else { -0.05 })
            .collect();
        let second = nelder_mead(objective, &perturbed, &opts);
        let iterations = first.iterations + second.iterations;
        let best = if second.f <= first.f { &second } else { &first };
        if !best.f.is_finite() || !(first.converged || second.converged) {
            return Err(Error::Fit {
                msg: format!("{order}: Nelder-Mead did not converge"),
                best_loglik: -best.f,
                iterations,
            });
        }
        (best.x.clone(), iterations)
    };

    let mut params = decode(&order, &x_best, center, scale);
    let (_, sigma2) = concentrated(&params)?;
    params.sigma2 = sigma2;
    let mut model = SarimaModel::from_params(order, params, train)?;
    model.iterations = iterations;
    Ok(model)
}

/// Forecasts from the end of the training data the model was fitted on.
pub fn sarima_forecast(model: &SarimaModel, h_max: usize) -> Result<ForecastVector> {
    let tracker = SarimaTracker {
        order: model.order,
        params: model.params.clone(),
        system: model.params.system(&model.order),
        delta: differencing(model.order.d, model.order.sd, model.order.s),
        raw: Vec::new(),
        scratch: Scratch::default(),
        state: model.state.clone(),
    };
    ForecastVector::new(model.origin_date, tracker.forecast(h_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::seasonal_naive_forecast;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn start() -> NaiveDate {
        NaiveDate::from_ymd_opt(2017, 1, 1).unwrap()
    }

    fn ar1_path(phi: f64, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x: f64 = StandardNormal.sample(&mut rng);
        x /= (1.0 - phi * phi).sqrt();
        (0..n)
            .map(|_| {
                let e: f64 = StandardNormal.sample(&mut rng);
                x = phi * x + e;
                x
            })
            .collect()
    }

    #[test]
    fn white_noise_loglik_is_sum_of_normal_densities() {
        let values = [0.3, -1.2, 0.8, 2.0, -0.1];
        let s = TimeSeries::from_values("t", start(), &values).unwrap();
        let order = SarimaOrder::arima(1, 0, 0);
        let params = SarimaParams::zeros(&order);
        let ll = sarima_loglik(&order, &params, &s).unwrap();
        let expected: f64 = values
            .iter()
            .map(|v| -0.5 * (2.0 * std::f64::consts::PI).ln() - 0.5 * v * v)
            .sum();
        assert!((ll - expected).abs() < 1e-12);
    }

    #[test]
    fn loglik_rejects_non_stationary_and_bad_variance() {
        let s = TimeSeries::from_values("t", start(), &[1.0, 2.0, 3.0]).unwrap();
        let order = SarimaOrder::arima(1, 0, 0);
        let mut p = SarimaParams::zeros(&order);
        p.ar = vec![1.2];
        assert!(sarima_loglik(&order, &p, &s).is_err());
        p.ar = vec![0.2];
        p.sigma2 = 0.0;
        assert!(matches!(sarima_loglik(&order, &p, &s), Err(Error::Numeric(_))));
    }

    #[test]
    fn ar1_forecast_is_geometric() {
        let order = SarimaOrder::arima(1, 0, 0);
        let params = SarimaParams {
            ar: vec![0.5],
            ..SarimaParams::zeros(&order)
        };
        let s = TimeSeries::from_values("t", start(), &[3.0, -1.0, 10.0]).unwrap();
        let model = SarimaModel::from_params(order, params, &s).unwrap();
        let f = sarima_forecast(&model, 4).unwrap();
        for (got, want) in f.values.iter().zip([5.0, 2.5, 1.25, 0.625]) {
            assert!((got - want).abs() < 1e-12, "{:?}", f.values);
        }
        assert_eq!(f.origin_date, NaiveDate::from_ymd_opt(2017, 1, 4).unwrap());
    }

    #[test]
    fn mean_model_forecasts_the_mean() {
        let order = SarimaOrder::arima(0, 0, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v: Vec<f64> = (0..200)
            .map(|_| 20.0 + { let e: f64 = StandardNormal.sample(&mut rng); e * 2.0 })
            .collect();
        let s = TimeSeries::from_values("t", start(), &v).unwrap();
        let model = sarima_fit(&s, order).unwrap();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64;
        assert!((model.params.mean - mean).abs() < 1e-12);
        assert!((model.params.sigma2 - var).abs() < 1e-9);
        let f = sarima_forecast(&model, 7).unwrap();
        assert!(f.values.iter().all(|x| (x - mean).abs() < 1e-12));

        let params = SarimaParams {
            mean: 20.0,
            ..SarimaParams::zeros(&order)
        };
        let fixed = SarimaModel::from_params(order, params, &s).unwrap();
        assert_eq!(sarima_forecast(&fixed, 3).unwrap().values, vec![20.0; 3]);
    }

    #[test]
    fn seasonal_random_walk_matches_seasonal_naive() {
        let order = SarimaOrder::seasonal(0, 0, 0, 0, 1, 0, 7);
        let v: Vec<f64> = (0..40).map(|i| ((i * 37) % 23) as f64 + 5.0).collect();
        let s = TimeSeries::from_values("t", start(), &v).unwrap();
        let model = sarima_fit(&s, order).unwrap();
        let a = sarima_forecast(&model, 10).unwrap();
        let b = seasonal_naive_forecast(&s, 7, 10).unwrap();
        assert_eq!(a.origin_date, b.origin_date);
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-9, "{:?} vs {:?}", a.values, b.values);
        }
    }

    #[test]
    fn fit_recovers_ar1() {
        let v: Vec<f64> = ar1_path(0.8, 2000, 11).iter().map(|x| x + 30.0).collect();
        let s = TimeSeries::from_values("t", start(), &v).unwrap();
        let model = sarima_fit(&s, SarimaOrder::arima(1, 0, 0)).unwrap();
        assert!((model.params.ar[0] - 0.8).abs() < 0.05, "{:?}", model.params);
        assert!((model.params.mean - 30.0).abs() < 0.5);
        assert!((model.params.sigma2 - 1.0).abs() < 0.1);
    }

    #[test]
    fn fit_rejects_short_series() {
        let s = TimeSeries::from_values("t", start(), &[1.0; 15]).unwrap();
        assert!(matches!(sarima_fit(&s, SarimaOrder::arima(2, 0, 0)), Err(Error::Data(_))));
    }

    #[test]
    fn forecast_from_matches_fitted_state() {
        let v: Vec<f64> = ar1_path(0.6, 300, 5).iter().map(|x| x + 10.0).collect();
        let s = TimeSeries::from_values("t", start(), &v).unwrap();
        let order = SarimaOrder::seasonal(1, 0, 1, 0, 1, 1, 7);
        let model = sarima_fit(&s, order).unwrap();
        assert_eq!(
            sarima_forecast(&model, 7).unwrap(),
            model.forecast_from(&s, 7).unwrap()
        );
    }

    #[test]
    fn missing_values_skip_updates() {
        let mut v: Vec<Option<f64>> = ar1_path(0.7, 400, 9).into_iter().map(Some).collect();
        for i in (10..400).step_by(17) {
            v[i] = None;
        }
        v[399] = None;
        let s = TimeSeries::new("t", start(), v).unwrap();
        let model = sarima_fit(&s, SarimaOrder::arima(1, 1, 1)).unwrap();
        let f = sarima_forecast(&model, 7).unwrap();
        assert!(f.values.iter().all(|x| x.is_finite()));
        assert!(model.loglik.is_finite());
    }

    #[test]
    fn coefficients_export() {
        let order = SarimaOrder::arima(1, 0, 0);
        let params = SarimaParams {
            ar: vec![0.25],
            ..SarimaParams::zeros(&order)
        };
        let s = TimeSeries::from_values("t", start(), &[1.0, 2.0, 1.5]).unwrap();
        let m = SarimaModel::from_params(order, params, &s).unwrap();
        let j = m.coefficients_json();
        assert_eq!(j["order"], "(1,0,0)(0,0,0)_7");
        assert_eq!(j["ar"][0], 0.25);
    }
}
