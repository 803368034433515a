//! Horizon-wise errors, persistence-relative skill and the predictability
//! horizon.
//!
//! Skill at horizon `h` is `1 - err_model(h) / err_persistence(h)`; positive
//! means the model beats lag-1 persistence. The predictability horizon is
//! reported twice: the largest `h` with positive skill (`h_star_max`) and the
//! length of the leading run of positive skill (`h_star_prefix`). The two
//! differ only when skill dips to non-positive values between positive ones.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::protocol::ForecastRecord;
use crate::{Error, Result};

/// Root mean squared error over `(forecast, actual)` pairs.
pub fn rmse(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput("rmse of no pairs".into()));
    }
    let sse: f64 = pairs.iter().map(|(f, a)| (f - a) * (f - a)).sum();
    Ok((sse / pairs.len() as f64).sqrt())
}

/// Mean absolute error over `(forecast, actual)` pairs.
pub fn mae(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput("mae of no pairs".into()));
    }
    Ok(pairs.iter().map(|(f, a)| (f - a).abs()).sum::<f64>() / pairs.len() as f64)
}

/// `1 - err_model / err_pers`. Two perfect forecasts are at parity (0).
pub fn skill(err_model: f64, err_pers: f64) -> Result<f64> {
    if err_pers > 0.0 {
        Ok(1.0 - err_model / err_pers)
    } else if err_model == 0.0 {
        Ok(0.0)
    } else {
        Err(Error::UndefinedSkill(err_model))
    }
}

/// `(h_star_max, h_star_prefix)` for a skill vector indexed from `h = 1`.
/// Zero and NaN are not positive.
pub fn h_star(skill: &[f64]) -> (usize, usize) {
    let max = skill.iter().rposition(|&s| s > 0.0).map_or(0, |i| i + 1);
    let prefix = skill.iter().take_while(|&&s| s > 0.0).count();
    (max, prefix)
}

/// Error functional used inside the skill ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorMetric {
    #[default]
    Rmse,
    Mae,
}

impl ErrorMetric {
    pub fn eval(&self, pairs: &[(f64, f64)]) -> Result<f64> {
        match self {
            ErrorMetric::Rmse => rmse(pairs),
            ErrorMetric::Mae => mae(pairs),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ErrorMetric::Rmse => "rmse",
            ErrorMetric::Mae => "mae",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// One error per horizon over all origins, then one skill.
    Pooled,
    /// Skill per fold and horizon, then the mean over folds.
    MeanOfFolds,
}

impl Aggregation {
    pub fn name(&self) -> &'static str {
        match self {
            Aggregation::Pooled => "pooled",
            Aggregation::MeanOfFolds => "mean_of_folds",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkillProfile {
    pub model_tag: String,
    pub mode: Aggregation,
    pub metric: ErrorMetric,
    /// `skill[h - 1]` is the skill at horizon `h`.
    pub skill: Vec<f64>,
    pub h_star_max: usize,
    pub h_star_prefix: usize,
}

fn pairs_by<K: Ord>(
    records: &[ForecastRecord],
    tag: &str,
    key: impl Fn(&ForecastRecord) -> K,
) -> BTreeMap<K, (Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    let mut out: BTreeMap<K, (Vec<(f64, f64)>, Vec<(f64, f64)>)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.model_tag == tag) {
        let e = out.entry(key(r)).or_default();
        e.0.push((r.forecast, r.actual));
        e.1.push((r.persistence, r.actual));
    }
    out
}

fn horizons_of(records: &[ForecastRecord], tag: &str) -> Result<usize> {
    let h_max = records
        .iter()
        .filter(|r| r.model_tag == tag)
        .map(|r| r.h)
        .max()
        .ok_or_else(|| Error::Input(format!("no records for model {tag:?}")))?;
    Ok(h_max)
}

/// Skill per horizon for one model.
pub fn skill_profile(
    records: &[ForecastRecord],
    model_tag: &str,
    mode: Aggregation,
    metric: ErrorMetric,
) -> Result<SkillProfile> {
    let h_max = horizons_of(records, model_tag)?;
    let mut skill_by_h = Vec::with_capacity(h_max);
    match mode {
        Aggregation::Pooled => {
            let groups = pairs_by(records, model_tag, |r| r.h);
            for h in 1..=h_max {
                let (m, p) = groups
                    .get(&h)
                    .ok_or_else(|| Error::Input(format!("{model_tag}: no records at horizon {h}")))?;
                skill_by_h.push(skill(metric.eval(m)?, metric.eval(p)?)?);
            }
        }
        Aggregation::MeanOfFolds => {
            for h in 1..=h_max {
                let fs = fold_skills(records, model_tag, h, metric)?;
                if fs.is_empty() {
                    return Err(Error::Input(format!("{model_tag}: no folds at horizon {h}")));
                }
                skill_by_h.push(fs.iter().map(|(_, s)| s).sum::<f64>() / fs.len() as f64);
            }
        }
    }
    let (h_star_max, h_star_prefix) = h_star(&skill_by_h);
    Ok(SkillProfile {
        model_tag: model_tag.to_string(),
        mode,
        metric,
        skill: skill_by_h,
        h_star_max,
        h_star_prefix,
    })
}

/// `(fold_id, skill)` for every fold with records at horizon `h`. Folds where
/// skill is undefined (perfect persistence, imperfect model) are left out.
pub fn fold_skills(records: &[ForecastRecord], model_tag: &str, h: usize, metric: ErrorMetric) -> Result<Vec<(usize, f64)>> {
    let groups = pairs_by(records, model_tag, |r| (r.h, r.fold_id));
    let mut out = Vec::new();
    for ((_, fold), (m, p)) in groups.range((h, 0)..=(h, usize::MAX)) {
        match skill(metric.eval(m)?, metric.eval(p)?) {
            Ok(s) => out.push((*fold, s)),
            Err(Error::UndefinedSkill(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldSkillSummary {
    pub h: usize,
    pub fold_ids: Vec<usize>,
    pub fold_skills: Vec<f64>,
    pub median: f64,
    pub mean: f64,
    /// Folds with skill `<= 0`.
    pub non_positive: usize,
    pub total: usize,
}

/// Median, mean and non-positive count of per-fold skills.
pub fn summarize_fold_skills(h: usize, folds: &[(usize, f64)]) -> Result<FoldSkillSummary> {
    if folds.is_empty() {
        return Err(Error::EmptyInput(format!("no folds at horizon {h}")));
    }
    let mut sorted: Vec<f64> = folds.iter().map(|f| f.1).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Ok(FoldSkillSummary {
        h,
        fold_ids: folds.iter().map(|f| f.0).collect(),
        fold_skills: folds.iter().map(|f| f.1).collect(),
        median,
        mean: folds.iter().map(|f| f.1).sum::<f64>() / n as f64,
        non_positive: sorted.iter().filter(|&&s| s <= 0.0).count(),
        total: n,
    })
}

/// Per-fold skill distribution for one model and horizon.
pub fn fold_distribution(records: &[ForecastRecord], model_tag: &str, h: usize, metric: ErrorMetric) -> Result<FoldSkillSummary> {
    summarize_fold_skills(h, &fold_skills(records, model_tag, h, metric)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCell {
    pub model_tag: String,
    pub h: usize,
    pub rmse: f64,
    pub mae: f64,
    pub persistence_rmse: f64,
    pub persistence_mae: f64,
    pub n_pairs: usize,
}

/// RMSE and MAE per model and horizon, with the persistence reference
/// computed on the same pairs.
pub fn error_table(records: &[ForecastRecord]) -> Result<Vec<ErrorCell>> {
    let mut groups: BTreeMap<(String, usize), (Vec<(f64, f64)>, Vec<(f64, f64)>)> = BTreeMap::new();
    for r in records {
        let e = groups.entry((r.model_tag.clone(), r.h)).or_default();
        e.0.push((r.forecast, r.actual));
        e.1.push((r.persistence, r.actual));
    }
    groups
        .into_iter()
        .map(|((model_tag, h), (m, p))| {
            Ok(ErrorCell {
                model_tag,
                h,
                rmse: rmse(&m)?,
                mae: mae(&m)?,
                persistence_rmse: rmse(&p)?,
                persistence_mae: mae(&p)?,
                n_pairs: m.len(),
            })
        })
        .collect()
}
