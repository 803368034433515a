//! Kalman filter for a zero-mean ARMA process in companion form.
//!
//! State `a_t` has dimension `r = max(p, q + 1)` where `p`, `q` are the
//! degrees of the combined (seasonal × non-seasonal) polynomials:
//!
//! ```text
//! a_{t+1} = T a_t + R e_{t+1},   w_t = a_t[0]
//! T[:,0] = phi,  T[i,i+1] = 1,   R = (1, theta_1, ..., theta_{r-1})
//! ```
//!
//! Covariances are kept in units of the innovation variance so the variance
//! can be concentrated out of the likelihood.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct ArmaSystem {
    r: usize,
    phi: Vec<f64>,
    rvec: Vec<f64>,
}

impl ArmaSystem {
    pub fn new(ar: &[f64], ma: &[f64]) -> Self {
        let r = ar.len().max(ma.len() + 1);
        let mut phi = vec![0.0; r];
        phi[..ar.len()].copy_from_slice(ar);
        let mut rvec = vec![0.0; r];
        rvec[0] = 1.0;
        rvec[1..=ma.len()].copy_from_slice(ma);
        Self { r, phi, rvec }
    }

    /// Unconditional state covariance, solving `P = T P T' + R R'`.
    pub fn stationary_cov(&self) -> Result<Vec<f64>> {
        let r = self.r;
        let rr = r * r;
        // vec(P) = (I - T ⊗ T)^{-1} vec(R R'), row-major vec.
        let mut m = DMatrix::<f64>::identity(rr, rr);
        let t = |i: usize, j: usize| -> f64 {
            if j == 0 {
                self.phi[i]
            } else if j == i + 1 {
                1.0
            } else {
                0.0
            }
        };
        let nonzero: Vec<Vec<(usize, f64)>> = (0..r)
            .map(|i| (0..r).filter_map(|j| Some((j, t(i, j))).filter(|p| p.1 != 0.0)).collect())
            .collect();
        for i in 0..r {
            for j in 0..r {
                for &(k, tik) in &nonzero[i] {
                    for &(l, tjl) in &nonzero[j] {
                        m[(i * r + j, k * r + l)] -= tik * tjl;
                    }
                }
            }
        }
        let rhs = DVector::from_iterator(rr, (0..rr).map(|idx| self.rvec[idx / r] * self.rvec[idx % r]));
        let sol = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Numeric("singular stationary covariance system".into()))?;
        if sol.iter().any(|v| !v.is_finite()) || sol[0] <= 0.0 {
            return Err(Error::Numeric("invalid stationary covariance".into()));
        }
        // Symmetrise against round-off.
        let mut p = vec![0.0; rr];
        for i in 0..r {
            for j in 0..r {
                p[i * r + j] = 0.5 * (sol[i * r + j] + sol[j * r + i]);
            }
        }
        Ok(p)
    }

    pub fn initial_state(&self) -> Result<FilterState> {
        Ok(FilterState {
            a: vec![0.0; self.r],
            p: self.stationary_cov()?,
        })
    }

    fn predict(&self, st: &mut FilterState, tp: &mut [f64]) {
        let r = self.r;
        let a0 = st.a[0];
        for i in 0..r {
            let next = if i + 1 < r { st.a[i + 1] } else { 0.0 };
            st.a[i] = self.phi[i] * a0 + next;
        }
        // tp = T P
        for i in 0..r {
            for j in 0..r {
                let below = if i + 1 < r { st.p[(i + 1) * r + j] } else { 0.0 };
                tp[i * r + j] = self.phi[i] * st.p[j] + below;
            }
        }
        // P = tp T' + R R'
        for i in 0..r {
            for j in 0..r {
                let right = if j + 1 < r { tp[i * r + j + 1] } else { 0.0 };
                st.p[i * r + j] = tp[i * r] * self.phi[j] + right + self.rvec[i] * self.rvec[j];
            }
        }
    }

    /// Measurement update with a demeaned observation followed by the
    /// one-step prediction. Returns the innovation and its scaled variance
    /// when the observation is present.
    pub fn step(&self, st: &mut FilterState, obs: Option<f64>, scratch: &mut Scratch) -> Option<(f64, f64)> {
        let r = self.r;
        scratch.tp.resize(r * r, 0.0);
        scratch.k.resize(r, 0.0);
        let out = obs.map(|z| {
            let v = z - st.a[0];
            let f = st.p[0];
            let k = &mut scratch.k;
            for i in 0..r {
                k[i] = st.p[i * r];
            }
            for i in 0..r {
                st.a[i] += k[i] * v / f;
            }
            for i in 0..r {
                for j in 0..r {
                    st.p[i * r + j] -= k[i] * k[j] / f;
                }
            }
            (v, f)
        });
        self.predict(st, &mut scratch.tp);
        out
    }

    /// Iterates the transition with zero innovations; `steps` predictions of
    /// the observation starting from the current predicted state.
    pub fn project(&self, st: &FilterState, steps: usize) -> Vec<f64> {
        let mut a = st.a.clone();
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            out.push(a[0]);
            let a0 = a[0];
            for i in 0..self.r {
                let next = if i + 1 < self.r { a[i + 1] } else { 0.0 };
                a[i] = self.phi[i] * a0 + next;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Scratch {
    tp: Vec<f64>,
    k: Vec<f64>,
}

/// Predicted state mean and (variance-scaled) covariance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterState {
    pub a: Vec<f64>,
    pub p: Vec<f64>,
}

/// Sums needed by the Gaussian likelihood of a demeaned series.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct InnovationSums {
    pub n: usize,
    pub sum_log_f: f64,
    pub sum_v2_over_f: f64,
}

impl InnovationSums {
    /// Exact log-likelihood at innovation variance `sigma2`.
    pub fn loglik(&self, sigma2: f64) -> f64 {
        let n = self.n as f64;
        -0.5 * (n * (2.0 * std::f64::consts::PI).ln() + n * sigma2.ln() + self.sum_log_f + self.sum_v2_over_f / sigma2)
    }

    /// Maximum-likelihood innovation variance.
    pub fn sigma2_hat(&self) -> f64 {
        self.sum_v2_over_f / self.n as f64
    }
}

pub(crate) fn innovation_sums(system: &ArmaSystem, demeaned: &[Option<f64>]) -> Result<InnovationSums> {
    let mut st = system.initial_state()?;
    let mut scratch = Scratch::default();
    let mut sums = InnovationSums::default();
    for &z in demeaned {
        if let Some((v, f)) = system.step(&mut st, z, &mut scratch) {
            if !(f > 0.0) || !f.is_finite() {
                return Err(Error::Numeric(format!("innovation variance {f}")));
            }
            sums.n += 1;
            sums.sum_log_f += f.ln();
            sums.sum_v2_over_f += v * v / f;
        }
    }
    if !sums.sum_v2_over_f.is_finite() || !sums.sum_log_f.is_finite() {
        return Err(Error::Numeric("non-finite likelihood terms".into()));
    }
    Ok(sums)
}
