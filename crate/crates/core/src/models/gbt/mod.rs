//! Gradient-boosted regression trees with the direct multi-horizon strategy:
//! one independent ensemble per horizon, each trained by stage-wise least
//! squares on residuals with shrinkage and optional row subsampling.

mod supervised;
mod tree;

use chrono::NaiveDate;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ForecastVector;
use crate::{Error, Result};

pub use supervised::{build_supervised, feature_names, feature_row, SupervisedSet};
pub use tree::{Node, Tree};
use tree::TreeBuilder;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GbtHyper {
    pub n_trees: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub min_leaf: usize,
    /// Fraction of rows drawn without replacement for each tree.
    pub subsample: f64,
    pub lags: Vec<usize>,
    pub use_calendar: bool,
    pub rng_seed: u64,
    /// Refit every this many folds in a rolling protocol.
    pub refit_every: usize,
}

impl Default for GbtHyper {
    fn default() -> Self {
        Self {
            n_trees: 300,
            max_depth: 4,
            learning_rate: 0.05,
            min_leaf: 5,
            subsample: 0.8,
            lags: vec![1, 2, 3, 7, 14],
            use_calendar: true,
            rng_seed: 0,
            refit_every: 1,
        }
    }
}

impl GbtHyper {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(format!("gbt: {m}")));
        if self.n_trees == 0 {
            return bad("n_trees must be >= 1");
        }
        if self.max_depth == 0 {
            return bad("max_depth must be >= 1");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return bad("learning_rate must be in (0, 1]");
        }
        if self.min_leaf == 0 {
            return bad("min_leaf must be >= 1");
        }
        if !(self.subsample > 0.0 && self.subsample <= 1.0) {
            return bad("subsample must be in (0, 1]");
        }
        if self.lags.is_empty() || self.lags.contains(&0) {
            return bad("lags must be non-empty and >= 1");
        }
        if self.refit_every == 0 {
            return bad("refit_every must be >= 1");
        }
        Ok(())
    }
}

/// Boosted ensemble for one horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub base: f64,
    pub learning_rate: f64,
    pub trees: Vec<Tree>,
}

impl Ensemble {
    pub fn predict(&self, x: &[f64]) -> f64 {
        self.predict_staged(x, self.trees.len())
    }

    /// Prediction using only the first `n_trees` trees.
    pub fn predict_staged(&self, x: &[f64], n_trees: usize) -> f64 {
        self.trees[..n_trees.min(self.trees.len())]
            .iter()
            .fold(self.base, |acc, t| acc + self.learning_rate * t.predict(x))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbtModel {
    pub hyper: GbtHyper,
    pub feature_names: Vec<String>,
    /// `horizons[h - 1]` predicts horizon `h`.
    pub horizons: Vec<Ensemble>,
}

impl GbtModel {
    pub fn h_max(&self) -> usize {
        self.horizons.len()
    }

    pub fn predict_row(&self, features: &[f64]) -> Result<Vec<f64>> {
        if features.len() != self.feature_names.len() {
            return Err(Error::Schema {
                expected: self.feature_names.len(),
                got: features.len(),
            });
        }
        Ok(self.horizons.iter().map(|e| e.predict(features)).collect())
    }
}

fn fit_ensemble(rows: &[Vec<f64>], y: &[f64], hyper: &GbtHyper, seed: u64) -> Ensemble {
    let n = rows.len();
    let base = y.iter().sum::<f64>() / n as f64;
    let builder = TreeBuilder::new(rows, hyper.max_depth, hyper.min_leaf);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_sample = ((hyper.subsample * n as f64).round() as usize).clamp(1, n);
    let mut pred = vec![base; n];
    let mut residual = vec![0.0; n];
    let mut mask = vec![true; n];
    let mut trees = Vec::with_capacity(hyper.n_trees);
    for _ in 0..hyper.n_trees {
        for i in 0..n {
            residual[i] = y[i] - pred[i];
        }
        if n_sample < n {
            mask.iter_mut().for_each(|m| *m = false);
            for i in sample(&mut rng, n, n_sample) {
                mask[i] = true;
            }
        }
        let tree = builder.build(&residual, &mask);
        for i in 0..n {
            pred[i] += hyper.learning_rate * tree.predict(&rows[i]);
        }
        trees.push(tree);
    }
    Ensemble {
        base,
        learning_rate: hyper.learning_rate,
        trees,
    }
}

/// Trains one ensemble per horizon. Horizon `h` uses seed
/// `rng_seed + h`, so results do not depend on thread scheduling.
pub fn gbt_fit(data: &SupervisedSet, hyper: &GbtHyper) -> Result<GbtModel> {
    hyper.validate()?;
    let min_rows = 2 * hyper.min_leaf;
    let per_h: Vec<(Vec<Vec<f64>>, Vec<f64>)> = data
        .targets
        .iter()
        .map(|col| {
            data.rows
                .iter()
                .zip(col)
                .filter_map(|(r, t)| t.map(|t| (r.clone(), t)))
                .unzip()
        })
        .collect();
    if let Some((h, (rows, _))) = per_h.iter().enumerate().find(|(_, (r, _))| r.len() < min_rows) {
        return Err(Error::Data(format!(
            "horizon {}: {} training rows, need at least {min_rows}",
            h + 1,
            rows.len()
        )));
    }
    let horizons = per_h
        .par_iter()
        .enumerate()
        .map(|(i, (rows, y))| fit_ensemble(rows, y, hyper, hyper.rng_seed.wrapping_add(i as u64 + 1)))
        .collect();
    Ok(GbtModel {
        hyper: hyper.clone(),
        feature_names: data.feature_names.clone(),
        horizons,
    })
}

/// Direct forecasts for every horizon from one feature row.
pub fn gbt_forecast(model: &GbtModel, origin: NaiveDate, features: &[f64]) -> Result<ForecastVector> {
    ForecastVector::new(origin, model.predict_row(features)?)
}
