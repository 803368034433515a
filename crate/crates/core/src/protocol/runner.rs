use chrono::{Duration, NaiveDate};
use rayon::prelude::*;

use super::{fit_preprocessor, FoldFailure, FoldPlan, FoldSpec, ForecastRecord, ForecastRecordSet, PreprocKind, PreprocSpec, RunProvenance, SkipCounts};
use crate::models::{
    build_supervised, feature_row, gbt_fit, sarima_fit, sarima_order_select, seasonal_naive_forecast, ForecasterSpec,
    GbtHyper, SarimaModel,
};
use crate::series::TimeSeries;
use crate::{Error, Result};

/// State shared by every fold of one run.
enum Prepared {
    Persistence,
    SeasonalNaive(usize),
    Sarima(SarimaModel),
    Gbt(GbtHyper),
}

/// Per-fold forecast source on the original scale. `Ok(None)` means the
/// model has no inputs at this origin.
trait OriginForecaster {
    fn forecast(&mut self, origin: NaiveDate, persistence: f64) -> Result<Option<Vec<f64>>>;
}

struct PersistenceSource {
    h_max: usize,
}

impl OriginForecaster for PersistenceSource {
    fn forecast(&mut self, _origin: NaiveDate, persistence: f64) -> Result<Option<Vec<f64>>> {
        Ok(Some(vec![persistence; self.h_max]))
    }
}

struct SeasonalSource<'a> {
    series: &'a TimeSeries,
    period: usize,
    h_max: usize,
}

impl OriginForecaster for SeasonalSource<'_> {
    fn forecast(&mut self, origin: NaiveDate, _persistence: f64) -> Result<Option<Vec<f64>>> {
        let history = self.series.before(origin);
        Ok(Some(seasonal_naive_forecast(&history, self.period, self.h_max)?.values))
    }
}

/// Filters the transformed series forward with frozen coefficients and
/// snapshots forecasts at each origin.
struct SarimaSource {
    tracker: crate::models::sarima::SarimaTracker,
    transformed: TimeSeries,
    series_start: NaiveDate,
    pre: PreprocSpec,
    h_max: usize,
}

impl OriginForecaster for SarimaSource {
    fn forecast(&mut self, origin: NaiveDate, _persistence: f64) -> Result<Option<Vec<f64>>> {
        let upto = (origin - self.series_start).num_days().max(0) as usize;
        while self.tracker.steps() < upto {
            let v = self.transformed.get(self.tracker.steps());
            self.tracker.push(v);
        }
        let z = self.tracker.forecast(self.h_max);
        finite(origin, z.into_iter().map(|v| self.pre.invert(v)).collect()).map(Some)
    }
}

struct GbtSource {
    model: crate::models::GbtModel,
    transformed: TimeSeries,
    pre: PreprocSpec,
}

impl OriginForecaster for GbtSource {
    fn forecast(&mut self, origin: NaiveDate, _persistence: f64) -> Result<Option<Vec<f64>>> {
        let h = &self.model.hyper;
        let Some(row) = feature_row(&self.transformed, origin, &h.lags, h.use_calendar) else {
            return Ok(None);
        };
        let z = self.model.predict_row(&row)?;
        finite(origin, z.into_iter().map(|v| self.pre.invert(v)).collect()).map(Some)
    }
}

fn finite(origin: NaiveDate, values: Vec<f64>) -> Result<Vec<f64>> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(values)
    } else {
        Err(Error::Numeric(format!("non-finite forecast at origin {origin}")))
    }
}

fn prepare(series: &TimeSeries, spec: &ForecasterSpec, plan: &FoldPlan, kind: PreprocKind) -> Result<(Prepared, Option<serde_json::Value>)> {
    Ok(match spec {
        ForecasterSpec::Persistence => (Prepared::Persistence, None),
        ForecasterSpec::SeasonalNaive { period } => (Prepared::SeasonalNaive(*period), None),
        ForecasterSpec::Sarima { .. } | ForecasterSpec::SarimaAuto { .. } => {
            let initial = series.before(plan.initial_train_end);
            let pre = fit_preprocessor(&initial, kind)?;
            let z = pre.apply_series(&initial)?;
            let (model, candidates) = match spec {
                ForecasterSpec::Sarima { order } => (sarima_fit(&z, *order)?, None),
                ForecasterSpec::SarimaAuto { grid } => {
                    let outcome = sarima_order_select(&z, grid)?;
                    let table: Vec<serde_json::Value> = outcome
                        .candidates
                        .iter()
                        .map(|(o, r)| match r {
                            Ok(a) if a.is_finite() => serde_json::json!({"order": o.to_string(), "aicc": a}),
                            Ok(_) => serde_json::json!({"order": o.to_string(), "error": "non-finite aicc"}),
                            Err(e) => serde_json::json!({"order": o.to_string(), "error": e.kind()}),
                        })
                        .collect();
                    (outcome.selected, Some(table))
                }
                _ => unreachable!(),
            };
            let mut info = model.coefficients_json();
            info["fitted_on"] = serde_json::json!([initial.start_date(), initial.end_date()]);
            if let Some(table) = candidates {
                info["candidates"] = serde_json::Value::Array(table);
            }
            (Prepared::Sarima(model), Some(info))
        }
        ForecasterSpec::Gbt(h) => (Prepared::Gbt(h.clone()), None),
    })
}

/// Runs every fold of `plan` for one model. Training data, preprocessing
/// parameters and model inputs for a fold are taken strictly before its
/// `train_end`; forecasts at an origin read only values dated before it.
pub fn run_protocol(
    series: &TimeSeries,
    model_tag: &str,
    spec: &ForecasterSpec,
    plan: &FoldPlan,
    preproc: PreprocKind,
) -> Result<ForecastRecordSet> {
    spec.validate()?;
    if plan.folds.is_empty() {
        return Err(Error::Plan("plan has no folds".into()));
    }
    let (prepared, fitted) = prepare(series, spec, plan, preproc)?;

    // Folds sharing one fitted model: GBT may refit every k folds.
    let every = match &prepared {
        Prepared::Gbt(h) => h.refit_every.max(1),
        _ => 1,
    };
    let groups: Vec<&[FoldSpec]> = plan.folds.chunks(every).collect();

    let outcomes: Vec<Vec<(usize, Result<(Vec<ForecastRecord>, SkipCounts)>)>> = groups
        .par_iter()
        .map(|group| run_group(series, model_tag, &prepared, group, plan.h_max, preproc))
        .collect();

    let mut set = ForecastRecordSet::default();
    let mut skipped = SkipCounts::default();
    let mut failures = Vec::new();
    let mut first_error = None;
    for (fold_id, outcome) in outcomes.into_iter().flatten() {
        match outcome {
            Ok((records, skips)) => {
                set.records.extend(records);
                skipped.add(&skips);
            }
            Err(e) => {
                failures.push(FoldFailure {
                    fold_id,
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                });
                first_error.get_or_insert(e);
            }
        }
    }
    if failures.len() == plan.folds.len() {
        let e = first_error.expect("at least one failure");
        return Err(match e {
            Error::Fit { .. } | Error::Selection(_) | Error::Numeric(_) => e,
            other => Error::Fit {
                msg: format!("all {} folds failed; first: {other}", plan.folds.len()),
                best_loglik: f64::NAN,
                iterations: 0,
            },
        });
    }
    set.provenance.push(RunProvenance {
        model_tag: model_tag.to_string(),
        spec: spec.clone(),
        preproc,
        plan: plan.clone(),
        fitted,
        fold_failures: failures,
        skipped,
    });
    Ok(set)
}

type FoldOutcome = (usize, Result<(Vec<ForecastRecord>, SkipCounts)>);

fn run_group(
    series: &TimeSeries,
    tag: &str,
    prepared: &Prepared,
    group: &[FoldSpec],
    h_max: usize,
    kind: PreprocKind,
) -> Vec<FoldOutcome> {
    let anchor = group[0].train_end;
    match prepared {
        Prepared::Gbt(hyper) => {
            let fitted = (|| -> Result<(crate::models::GbtModel, TimeSeries, PreprocSpec)> {
                let train = series.before(anchor);
                let pre = fit_preprocessor(&train, kind)?;
                let z = pre.apply_series(series)?;
                let data = build_supervised(&z.before(anchor), &hyper.lags, h_max, hyper.use_calendar)?;
                Ok((gbt_fit(&data, hyper)?, z, pre))
            })();
            match fitted {
                Ok((model, transformed, pre)) => group
                    .iter()
                    .map(|fold| {
                        let mut src = GbtSource {
                            model: model.clone(),
                            transformed: transformed.clone(),
                            pre: pre.clone(),
                        };
                        (fold.fold_id, run_fold(series, tag, fold, h_max, &mut src))
                    })
                    .collect(),
                Err(e) => {
                    let msg = e.to_string();
                    let kind = e.kind();
                    let mut out = vec![(group[0].fold_id, Err(e))];
                    out.extend(group[1..].iter().map(|f| {
                        (f.fold_id, Err(Error::Data(format!("shared fit failed ({kind}): {msg}"))))
                    }));
                    out
                }
            }
        }
        _ => group
            .iter()
            .map(|fold| (fold.fold_id, run_simple(series, tag, prepared, fold, h_max, kind)))
            .collect(),
    }
}

fn run_simple(
    series: &TimeSeries,
    tag: &str,
    prepared: &Prepared,
    fold: &FoldSpec,
    h_max: usize,
    kind: PreprocKind,
) -> Result<(Vec<ForecastRecord>, SkipCounts)> {
    match prepared {
        Prepared::Persistence => run_fold(series, tag, fold, h_max, &mut PersistenceSource { h_max }),
        Prepared::SeasonalNaive(period) => run_fold(
            series,
            tag,
            fold,
            h_max,
            &mut SeasonalSource {
                series,
                period: *period,
                h_max,
            },
        ),
        Prepared::Sarima(model) => {
            let pre = fit_preprocessor(&series.before(fold.train_end), kind)?;
            let mut src = SarimaSource {
                tracker: model.tracker()?,
                transformed: pre.apply_series(series)?,
                series_start: series.start_date(),
                pre,
                h_max,
            };
            run_fold(series, tag, fold, h_max, &mut src)
        }
        Prepared::Gbt(_) => unreachable!("handled per group"),
    }
}

fn run_fold(
    series: &TimeSeries,
    tag: &str,
    fold: &FoldSpec,
    h_max: usize,
    source: &mut dyn OriginForecaster,
) -> Result<(Vec<ForecastRecord>, SkipCounts)> {
    let mut records = Vec::new();
    let mut skips = SkipCounts::default();
    let mut origin = fold.test_start;
    while origin <= fold.test_end {
        let Some(persistence) = series.value_on(origin - Duration::days(1)) else {
            skips.origins_without_persistence += 1;
            origin += Duration::days(1);
            continue;
        };
        match source.forecast(origin, persistence)? {
            None => skips.origins_without_features += 1,
            Some(values) => {
                for (i, forecast) in values.into_iter().enumerate().take(h_max) {
                    let target = origin + Duration::days(i as i64);
                    if target > series.end_date() {
                        skips.beyond_end += 1;
                        continue;
                    }
                    let Some(actual) = series.value_on(target) else {
                        skips.missing_actuals += 1;
                        continue;
                    };
                    records.push(ForecastRecord {
                        fold_id: fold.fold_id,
                        origin_date: origin,
                        h: i + 1,
                        model_tag: tag.to_string(),
                        forecast,
                        persistence,
                        actual,
                    });
                }
            }
        }
        origin += Duration::days(1);
    }
    Ok((records, skips))
}
