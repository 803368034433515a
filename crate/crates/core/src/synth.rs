//! Seeded PM10-like series: level, annual cycle, AR noise and decaying
//! episodes, plus the closed-form skill of the optimal AR(1) predictor.

use chrono::{Datelike, Duration, NaiveDate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::models::sarima::polynomial::is_stationary;
use crate::series::TimeSeries;
use crate::{Error, Result};

const BURN_IN: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSpec {
    pub name: String,
    pub n_days: usize,
    pub start_date: NaiveDate,
    pub mean_level: f64,
    /// `x_t = sum_k ar[k-1] x_{t-k} + e_t`.
    pub ar_coefficients: Vec<f64>,
    /// Half peak-to-trough of the annual cycle.
    pub seasonal_amplitude: f64,
    /// Day of year at which the annual cycle peaks.
    pub seasonal_peak_doy: f64,
    pub innovation_sd: f64,
    /// Expected episodes per year.
    pub episode_rate: f64,
    /// Mean episode amplitude; amplitudes are exponentially distributed.
    pub episode_magnitude: f64,
    /// E-folding time of an episode, in days.
    pub episode_decay: f64,
    pub rng_seed: u64,
    /// Share of days masked as missing.
    pub missing_rate: f64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            name: "synthetic".into(),
            n_days: 2557,
            start_date: NaiveDate::from_ymd_opt(2017, 1, 1).expect("valid date"),
            mean_level: 20.0,
            ar_coefficients: vec![0.6],
            seasonal_amplitude: 4.0,
            seasonal_peak_doy: 196.0,
            innovation_sd: 5.0,
            episode_rate: 6.0,
            episode_magnitude: 40.0,
            episode_decay: 2.0,
            rng_seed: 0,
            missing_rate: 0.0,
        }
    }
}

impl SynthSpec {
    /// A pure AR(1) around `mean_level`, with no cycle, episodes or gaps.
    pub fn ar1(phi: f64, n_days: usize, mean_level: f64, innovation_sd: f64, rng_seed: u64) -> Self {
        Self {
            name: format!("ar1_phi{phi}"),
            n_days,
            mean_level,
            ar_coefficients: vec![phi],
            seasonal_amplitude: 0.0,
            innovation_sd,
            episode_rate: 0.0,
            rng_seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(format!("synth: {m}")));
        if self.n_days == 0 {
            return bad("n_days must be >= 1".into());
        }
        if self.ar_coefficients.iter().any(|c| !c.is_finite()) || !is_stationary(&self.ar_coefficients) {
            return bad(format!("AR coefficients {:?} are not stationary", self.ar_coefficients));
        }
        for (name, v) in [
            ("mean_level", self.mean_level),
            ("seasonal_amplitude", self.seasonal_amplitude),
            ("innovation_sd", self.innovation_sd),
            ("episode_rate", self.episode_rate),
            ("episode_magnitude", self.episode_magnitude),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be finite and >= 0, got {v}"));
            }
        }
        if !self.seasonal_peak_doy.is_finite() {
            return bad("seasonal_peak_doy must be finite".into());
        }
        if self.episode_rate > 0.0 && !(self.episode_decay.is_finite() && self.episode_decay > 0.0) {
            return bad(format!("episode_decay must be > 0, got {}", self.episode_decay));
        }
        if !(0.0..1.0).contains(&self.missing_rate) {
            return bad(format!("missing_rate must lie in [0, 1), got {}", self.missing_rate));
        }
        if self.start_date.checked_add_signed(Duration::days(self.n_days as i64)).is_none() {
            return bad("date range overflows".into());
        }
        Ok(())
    }
}

/// Independent random streams so that switching one component off leaves
/// the others unchanged.
fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn ar_path(coefs: &[f64], sd: f64, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let p = coefs.len();
    let mut x = vec![0.0; BURN_IN + n];
    for t in 0..x.len() {
        let e: f64 = rng.sample(StandardNormal);
        let ar: f64 = (0..p.min(t)).map(|k| coefs[k] * x[t - 1 - k]).sum();
        x[t] = ar + sd * e;
    }
    x.split_off(BURN_IN)
}

fn episodes(spec: &SynthSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut out = vec![0.0; n];
    if spec.episode_rate <= 0.0 || spec.episode_magnitude <= 0.0 {
        return out;
    }
    let arrivals = Poisson::new(spec.episode_rate / 365.25).expect("positive rate");
    let decay = (-1.0 / spec.episode_decay).exp();
    let mut level = 0.0;
    for v in out.iter_mut() {
        level *= decay;
        let k = arrivals.sample(rng) as usize;
        for _ in 0..k {
            let a: f64 = rng.sample(Exp1);
            level += spec.episode_magnitude * a;
        }
        *v = level;
    }
    out
}

/// Draws one series. Identical specs give identical series.
pub fn generate(spec: &SynthSpec) -> Result<TimeSeries> {
    spec.validate()?;
    let n = spec.n_days;
    let noise = ar_path(&spec.ar_coefficients, spec.innovation_sd, n, &mut stream(spec.rng_seed, 1));
    let pulses = episodes(spec, n, &mut stream(spec.rng_seed, 2));
    let mut mask_rng = stream(spec.rng_seed, 3);
    let values = (0..n)
        .map(|i| {
            let date = spec.start_date + Duration::days(i as i64);
            let year_len = if date.leap_year() { 366.0 } else { 365.0 };
            let angle = std::f64::consts::TAU * (date.ordinal() as f64 - spec.seasonal_peak_doy) / year_len;
            let y = (spec.mean_level + spec.seasonal_amplitude * angle.cos() + noise[i] + pulses[i]).max(0.0);
            let masked = spec.missing_rate > 0.0 && mask_rng.gen::<f64>() < spec.missing_rate;
            (!masked).then_some(y)
        })
        .collect();
    TimeSeries::new(spec.name.clone(), spec.start_date, values)
}

/// Population RMSE skill of the optimal `h`-step predictor of a stationary
/// AR(1) against lag-1 persistence: `1 - sqrt((1 + phi^h) / 2)`.
pub fn ar1_skill_oracle(phi: f64, h: usize) -> Result<f64> {
    if !(phi.abs() < 1.0) {
        return Err(Error::Domain(format!("|phi| must be < 1, got {phi}")));
    }
    if h == 0 {
        return Err(Error::Domain("horizon must be >= 1".into()));
    }
    Ok(1.0 - ((1.0 + phi.powi(h as i32)) / 2.0).sqrt())
}
