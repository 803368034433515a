//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use skillhorizon::app::{cmd_evaluate, RunConfig};
use skillhorizon::metrics::{h_star, skill_profile, Aggregation, ErrorMetric};
use skillhorizon::models::{gbt_fit, sarima_fit, sarima_loglik, GbtHyper, SarimaOrder, SarimaParams, SupervisedSet};
use skillhorizon::protocol::{rolling_folds, run_protocol, FoldPlan, ForecastRecord, PreprocKind, DEFAULT_MIN_TEST};
use skillhorizon::synth::{ar1_skill_oracle, generate, SynthSpec};
use skillhorizon::{ForecasterSpec, TimeSeries};

type Outcome = Result<String, String>;

fn date(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("runtime {:.1}s exceeds {limit_s}s", elapsed.as_secs_f64())
    })
}

fn gbt_small(seed: u64) -> ForecasterSpec {
    ForecasterSpec::Gbt(GbtHyper {
        n_trees: 40,
        max_depth: 3,
        rng_seed: seed,
        ..GbtHyper::default()
    })
}

fn seasonal_sarima() -> ForecasterSpec {
    ForecasterSpec::Sarima {
        order: SarimaOrder::seasonal(1, 0, 1, 0, 1, 1, 7),
    }
}

// 1. Persistence against itself has zero skill everywhere.
fn skill_identity() -> Outcome {
    let inputs = [
        generate(&SynthSpec {
            n_days: 900,
            missing_rate: 0.08,
            rng_seed: 5,
            ..SynthSpec::default()
        })
        .map_err(|e| e.to_string())?,
        generate(&SynthSpec::ar1(-0.4, 700, 30.0, 4.0, 6)).map_err(|e| e.to_string())?,
    ];
    let mut checked = 0;
    for s in &inputs {
        let boundary = s.date_at(s.len() * 2 / 3);
        let plans = [
            FoldPlan::single(s, boundary, 7).map_err(|e| e.to_string())?,
            rolling_folds(s, s.date_at(s.len() / 2), 7, DEFAULT_MIN_TEST).map_err(|e| e.to_string())?,
        ];
        for plan in &plans {
            let set = run_protocol(s, "persistence", &ForecasterSpec::Persistence, plan, PreprocKind::None)
                .map_err(|e| e.to_string())?;
            for mode in [Aggregation::Pooled, Aggregation::MeanOfFolds] {
                for metric in [ErrorMetric::Rmse, ErrorMetric::Mae] {
                    let p = skill_profile(&set.records, "persistence", mode, metric).map_err(|e| e.to_string())?;
                    ensure(p.skill.len() == 7 && p.skill.iter().all(|v| *v == 0.0), || {
                        format!("{mode:?}/{metric:?}: {:?}", p.skill)
                    })?;
                    ensure((p.h_star_max, p.h_star_prefix) == (0, 0), || "H* not (0,0)".into())?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} profiles, all SS(h)=0 for h=1..7"))
}

// 2. h_star equals brute-force enumeration.
fn h_star_oracle() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=10);
        let ss: Vec<f64> = (0..n)
            .map(|_| match rng.gen_range(0..4) {
                0 => 0.0,
                _ => rng.gen_range(-0.5..0.5),
            })
            .collect();
        let positive: Vec<usize> = (1..=n).filter(|&h| ss[h - 1] > 0.0).collect();
        let max = positive.iter().copied().max().unwrap_or(0);
        let mut prefix = 0;
        while prefix < n && ss[prefix] > 0.0 {
            prefix += 1;
        }
        ensure(h_star(&ss) == (max, prefix), || format!("{ss:?}: {:?} vs {:?}", h_star(&ss), (max, prefix)))?;
    }
    within(t0.elapsed(), 1.0)?;
    Ok(format!("1000 vectors in {:.3}s", t0.elapsed().as_secs_f64()))
}

fn forecasts_at(records: &[ForecastRecord], origin: NaiveDate) -> BTreeMap<usize, u64> {
    records
        .iter()
        .filter(|r| r.origin_date == origin)
        .map(|r| (r.h, r.forecast.to_bits()))
        .collect()
}

// 3. Forecasts at an origin ignore every observation dated at or after it.
fn leakage() -> Outcome {
    let t0 = Instant::now();
    let series = generate(&SynthSpec {
        n_days: 730,
        start_date: date(2019, 1, 1),
        missing_rate: 0.03,
        rng_seed: 3,
        ..SynthSpec::default()
    })
    .map_err(|e| e.to_string())?;
    let plan = rolling_folds(&series, date(2020, 9, 1), 7, DEFAULT_MIN_TEST).map_err(|e| e.to_string())?;
    let families: Vec<(&str, ForecasterSpec, PreprocKind)> = vec![
        ("persistence", ForecasterSpec::Persistence, PreprocKind::None),
        ("seasonal_naive", ForecasterSpec::SeasonalNaive { period: 7 }, PreprocKind::None),
        ("sarima", seasonal_sarima(), PreprocKind::Standardize),
        ("gbt", gbt_small(1), PreprocKind::Log1p),
    ];
    let baseline: Vec<Vec<ForecastRecord>> = families
        .iter()
        .map(|(tag, spec, pre)| run_protocol(&series, tag, spec, &plan, *pre).map(|s| s.records))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let origins: Vec<NaiveDate> = {
        let mut o: Vec<NaiveDate> = baseline[0].iter().map(|r| r.origin_date).collect();
        o.dedup();
        o
    };
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut compared = 0usize;
    for trial in 0..100 {
        let origin = origins[rng.gen_range(0..origins.len())];
        let from = series.index_of(origin).unwrap();
        let mut values = series.values().to_vec();
        let k = rng.gen_range(1..=20);
        for _ in 0..k {
            let i = rng.gen_range(from..values.len());
            values[i] = if rng.gen_bool(0.2) { None } else { Some(rng.gen_range(0.0..400.0)) };
        }
        if trial % 10 == 0 {
            for v in values[from..].iter_mut() {
                *v = Some(rng.gen_range(0.0..1000.0));
            }
        }
        let mutated = TimeSeries::new("m", series.start_date(), values).map_err(|e| e.to_string())?;
        for (fi, (tag, spec, pre)) in families.iter().enumerate() {
            let after = run_protocol(&mutated, tag, spec, &plan, *pre).map_err(|e| e.to_string())?;
            let before = forecasts_at(&baseline[fi], origin);
            let now = forecasts_at(&after.records, origin);
            // Mutations can add or delete targets, which adds or removes
            // records; every forecast recorded in both runs must be identical.
            for (h, bits) in &now {
                if let Some(b) = before.get(h) {
                    ensure(b == bits, || {
                        format!("{tag}: forecast at {origin} h={h} changed after mutating data from {origin}")
                    })?;
                    compared += 1;
                }
            }
            ensure(!now.is_empty() || before.is_empty() || trial % 10 != 0, || {
                format!("{tag}: origin {origin} lost all records")
            })?;
        }
    }
    within(t0.elapsed(), 60.0)?;
    Ok(format!(
        "100 mutations x 4 families, {compared} forecasts bit-identical ({:.1}s)",
        t0.elapsed().as_secs_f64()
    ))
}

/// Closed-form ARMA(1,1) autocovariances for `y_t = phi y_{t-1} + e_t + theta e_{t-1}`.
fn arma11_acov(phi: f64, theta: f64, sigma2: f64, n: usize) -> Vec<f64> {
    let g0 = sigma2 * (1.0 + 2.0 * phi * theta + theta * theta) / (1.0 - phi * phi);
    let g1 = sigma2 * (1.0 + phi * theta) * (phi + theta) / (1.0 - phi * phi);
    let mut g = vec![g0];
    for k in 1..n {
        g.push(if k == 1 { g1 } else { phi * g[k - 1] });
    }
    g
}

fn mvn_logpdf(x: &[f64], mean: f64, acov: &[f64]) -> f64 {
    let n = x.len();
    let cov = DMatrix::from_fn(n, n, |i, j| acov[i.abs_diff(j)]);
    let chol = cov.cholesky().expect("positive definite");
    let d = DVector::from_iterator(n, x.iter().map(|v| v - mean));
    let z = chol.l().solve_lower_triangular(&d).expect("solve");
    let logdet: f64 = chol.l().diagonal().iter().map(|v| 2.0 * v.ln()).sum();
    -0.5 * (n as f64 * (2.0 * std::f64::consts::PI).ln() + logdet + z.norm_squared())
}

// 4. Kalman likelihood equals the direct Gaussian density.
fn kalman_oracle() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for kind in 0..3 {
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let phi = if kind != 1 { rng.gen_range(-0.95..0.95) } else { 0.0 };
            let theta = if kind != 0 { rng.gen_range(-0.95..0.95) } else { 0.0 };
            let (p, q) = match kind {
                0 => (1, 0),
                1 => (0, 1),
                _ => (1, 1),
            };
            let params = SarimaParams {
                ar: if p == 1 { vec![phi] } else { vec![] },
                ma: if q == 1 { vec![theta] } else { vec![] },
                sar: vec![],
                sma: vec![],
                mean: rng.gen_range(-5.0..5.0),
                sigma2: rng.gen_range(0.2..4.0),
            };
            let x: Vec<f64> = (0..n).map(|_| params.mean + 2.0 * rng.sample::<f64, _>(StandardNormal)).collect();
            let series = TimeSeries::from_values("x", date(2020, 1, 1), &x).map_err(|e| e.to_string())?;
            let kalman =
                sarima_loglik(&SarimaOrder::arima(p, 0, q), &params, &series).map_err(|e| e.to_string())?;
            let direct = mvn_logpdf(&x, params.mean, &arma11_acov(phi, theta, params.sigma2, n));
            let err = (kalman - direct).abs();
            worst = worst.max(err);
            ensure(err < 1e-8, || {
                format!("({p},0,{q}) phi={phi} theta={theta} n={n}: {kalman} vs {direct}")
            })?;
            cases += 1;
        }
    }
    within(t0.elapsed(), 30.0)?;
    Ok(format!("{cases} cases, max |diff| {worst:.1e}"))
}

fn monte_carlo_skill(phi: f64, h: usize, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![rng.sample::<f64, _>(StandardNormal) / (1.0 - phi * phi).sqrt()];
    for t in 1..n + h {
        x.push(phi * x[t - 1] + rng.sample::<f64, _>(StandardNormal));
    }
    let (mut m, mut p) = (0.0, 0.0);
    for t in 0..n {
        m += (phi.powi(h as i32) * x[t] - x[t + h]).powi(2);
        p += (x[t] - x[t + h]).powi(2);
    }
    1.0 - (m / p).sqrt()
}

// 5. Rolling-origin SARIMA(1,0,0) skill on AR(1) data follows the oracle.
fn ar1_skill() -> Outcome {
    let t0 = Instant::now();
    let phi = 0.8;
    for h in 1..=7 {
        let mc = monte_carlo_skill(phi, h, 1_000_000, 500 + h as u64);
        let oracle = ar1_skill_oracle(phi, h).map_err(|e| e.to_string())?;
        ensure((mc - oracle).abs() < 0.01, || format!("oracle {oracle} vs Monte-Carlo {mc} at h={h}"))?;
    }
    let series = generate(&SynthSpec::ar1(phi, 3000, 50.0, 1.0, 5)).map_err(|e| e.to_string())?;
    let plan = rolling_folds(&series, date(2019, 1, 1), 7, DEFAULT_MIN_TEST).map_err(|e| e.to_string())?;
    let spec = ForecasterSpec::Sarima {
        order: SarimaOrder::arima(1, 0, 0),
    };
    let set = run_protocol(&series, "ar1", &spec, &plan, PreprocKind::None).map_err(|e| e.to_string())?;
    let p = skill_profile(&set.records, "ar1", Aggregation::Pooled, ErrorMetric::Rmse).map_err(|e| e.to_string())?;
    let mut line = Vec::new();
    for h in 1..=7 {
        let oracle = ar1_skill_oracle(phi, h).unwrap();
        let tol = if h == 1 { 0.03 } else { 0.05 };
        line.push(format!("h{h} {:.3}/{:.3}", p.skill[h - 1], oracle));
        ensure((p.skill[h - 1] - oracle).abs() <= tol, || {
            format!("SS({h}) = {:.4}, oracle {oracle:.4} +/- {tol}", p.skill[h - 1])
        })?;
    }
    ensure(p.skill[6] > p.skill[0], || "SS(7) not above SS(1)".into())?;
    within(t0.elapsed(), 300.0)?;
    Ok(format!("{} folds; observed/oracle {}", plan.folds.len(), line.join(", ")))
}

// 6. SARIMA recovers phi; GBT fits a noiseless threshold of lag 1.
fn estimator_consistency() -> Outcome {
    let t0 = Instant::now();
    let series = generate(&SynthSpec::ar1(0.8, 2000, 100.0, 1.0, 11)).map_err(|e| e.to_string())?;
    let model = sarima_fit(&series, SarimaOrder::arima(1, 0, 0)).map_err(|e| e.to_string())?;
    let phi = model.params.ar[0];
    ensure((phi - 0.8).abs() <= 0.05, || format!("phi_hat = {phi}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lag1: Vec<f64> = (0..500).map(|_| rng.gen_range(0.0..100.0)).collect();
    let target: Vec<Option<f64>> = lag1.iter().map(|x| Some(if *x > 50.0 { 80.0 } else { 10.0 })).collect();
    let data = SupervisedSet {
        feature_names: vec!["lag_1".into()],
        rows: lag1.iter().map(|x| vec![*x]).collect(),
        targets: vec![target.clone()],
        origin_dates: (0..500).map(|i| date(2020, 1, 1) + chrono::Duration::days(i)).collect(),
    };
    let hyper = GbtHyper {
        n_trees: 300,
        subsample: 1.0,
        learning_rate: 0.5,
        ..GbtHyper::default()
    };
    let gbt = gbt_fit(&data, &hyper).map_err(|e| e.to_string())?;
    let sse: f64 = data
        .rows
        .iter()
        .zip(&target)
        .map(|(r, t)| (gbt.predict_row(r).unwrap()[0] - t.unwrap()).powi(2))
        .sum();
    let rmse = (sse / 500.0).sqrt();
    ensure(rmse < 1e-6, || format!("GBT training RMSE {rmse:e}"))?;
    within(t0.elapsed(), 120.0)?;
    Ok(format!("phi_hat {phi:.4}; GBT training RMSE {rmse:.1e}"))
}

// 7. Monthly fold accounting.
fn fold_accounting() -> Outcome {
    let n = (date(2023, 12, 31) - date(2017, 1, 1)).num_days() as usize + 1;
    let full = TimeSeries::from_values("full", date(2017, 1, 1), &vec![25.0; n]).map_err(|e| e.to_string())?;
    let plan = rolling_folds(&full, date(2020, 1, 1), 7, DEFAULT_MIN_TEST).map_err(|e| e.to_string())?;
    ensure(plan.folds.len() == 48, || format!("{} folds", plan.folds.len()))?;
    let start = full.index_of(date(2022, 3, 6)).unwrap();
    let mut values = full.values().to_vec();
    values[start..start + 20].iter_mut().for_each(|v| *v = None);
    let gappy = TimeSeries::new("gappy", full.start_date(), values).map_err(|e| e.to_string())?;
    let plan2 = rolling_folds(&gappy, date(2020, 1, 1), 7, DEFAULT_MIN_TEST).map_err(|e| e.to_string())?;
    let removed: Vec<NaiveDate> = plan
        .folds
        .iter()
        .map(|f| f.test_start)
        .filter(|d| !plan2.folds.iter().any(|g| g.test_start == *d))
        .collect();
    ensure(plan2.folds.len() == 47 && removed == vec![date(2022, 3, 1)], || {
        format!("{} folds after the gap, removed {removed:?}", plan2.folds.len())
    })?;
    Ok("48 folds; 20-day gap removes only 2022-03".into())
}

// 8. Optional: qualitative reproduction on a user-supplied export.
fn real_data() -> Option<Outcome> {
    let path = std::env::var("SKILLHORIZON_STATION_CSV").ok()?;
    Some((|| -> Outcome {
        let date_col = std::env::var("SKILLHORIZON_STATION_DATE_COLUMN").unwrap_or_else(|_| "date".into());
        let value_col = std::env::var("SKILLHORIZON_STATION_VALUE_COLUMN").unwrap_or_else(|_| "value".into());
        let spec = skillhorizon::series::CsvSpec::new(date_col, value_col);
        let raw = skillhorizon::series::load_csv(&path, &spec).map_err(|e| e.to_string())?;
        let (series, _) = skillhorizon::series::quality_filter(&raw, &Default::default());
        let train = series.before(date(2023, 1, 1));
        let test = series.from_date(date(2023, 1, 1));
        let lags = GbtHyper::default().lags;
        let rows = |s: &TimeSeries| skillhorizon::models::build_supervised(s, &lags, 1, true).map(|d| d.len()).unwrap_or(0);
        let plan = rolling_folds(&series, date(2020, 1, 1), 7, DEFAULT_MIN_TEST).map_err(|e| e.to_string())?;
        let grid_pick = skillhorizon::models::sarima_order_select(&series.before(date(2020, 1, 1)), &Default::default())
            .map_err(|e| e.to_string())?
            .selected
            .order;
        let sarima = ForecasterSpec::Sarima { order: grid_pick };
        let s_set = run_protocol(&series, "sarima", &sarima, &plan, PreprocKind::None).map_err(|e| e.to_string())?;
        let g_set =
            run_protocol(&series, "gbt", &ForecasterSpec::Gbt(GbtHyper::default()), &plan, PreprocKind::None)
                .map_err(|e| e.to_string())?;
        let s_prof = skill_profile(&s_set.records, "sarima", Aggregation::MeanOfFolds, ErrorMetric::Rmse)
            .map_err(|e| e.to_string())?;
        let g_folds = skillhorizon::metrics::fold_distribution(&g_set.records, "gbt", 1, ErrorMetric::Rmse)
            .map_err(|e| e.to_string())?;
        let summary = format!(
            "aligned rows {}/{}; {} folds; order {grid_pick}; SARIMA mean-of-folds {:?}; GBT h=1 non-positive {}/{}",
            rows(&train),
            rows(&test),
            plan.folds.len(),
            s_prof.skill.iter().map(|v| (v * 1000.0).round() / 1000.0).collect::<Vec<_>>(),
            g_folds.non_positive,
            g_folds.total
        );
        ensure(plan.folds.len() == 47, || format!("{summary}: expected 47 folds"))?;
        ensure(grid_pick.to_string() == "(2,0,2)(0,1,1)_7", || format!("{summary}: order"))?;
        ensure(s_prof.skill.iter().all(|v| *v > 0.0), || format!("{summary}: SARIMA skill"))?;
        ensure(2 * g_folds.non_positive > g_folds.total, || format!("{summary}: GBT folds"))?;
        Ok(summary)
    })())
}

// 9. Re-running evaluate gives byte-identical artifacts.
fn determinism() -> Outcome {
    let text = r#"
        seed = 17
        h_max = 7
        preprocessing = "standardize"
        [data.synth]
        n_days = 1000
        missing_rate = 0.02
        [protocol]
        kind = "rolling"
        initial_train_end = "2019-03-01"
        [[models]]
        tag = "persistence"
        kind = "persistence"
        [[models]]
        tag = "sarima"
        kind = "sarima"
        order = { p = 1, q = 1, D = 1, Q = 1, s = 7 }
        [[models]]
        tag = "gbt"
        kind = "gbt"
        n_trees = 60
    "#;
    let cfg = RunConfig::from_toml_str(text, &[], None).map_err(|e| e.to_string())?;
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        cmd_evaluate(&cfg, d.path()).map_err(|e| e.to_string())?;
    }
    for f in ["skill.json", "records.csv", "run.json", "report.md", "skill_profile.svg"] {
        let a = std::fs::read(dirs[0].path().join(f)).map_err(|e| e.to_string())?;
        let b = std::fs::read(dirs[1].path().join(f)).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{f} differs between runs"))?;
    }
    Ok("skill.json, records.csv, run.json, report.md, svg byte-identical".into())
}

fn main() {
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Option<Outcome>>)> = vec![
        (1, "persistence self-skill is zero", Box::new(|| Some(skill_identity()))),
        (2, "H* equals brute-force enumeration", Box::new(|| Some(h_star_oracle()))),
        (3, "leakage-freedom across model families", Box::new(|| Some(leakage()))),
        (4, "Kalman likelihood equals Gaussian density", Box::new(|| Some(kalman_oracle()))),
        (5, "AR(1) rolling skill follows the oracle", Box::new(|| Some(ar1_skill()))),
        (6, "estimator consistency", Box::new(|| Some(estimator_consistency()))),
        (7, "monthly fold accounting", Box::new(|| Some(fold_accounting()))),
        (8, "real-data qualitative reproduction", Box::new(real_data)),
        (9, "evaluate determinism", Box::new(|| Some(determinism()))),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let t0 = Instant::now();
        let outcome = run();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            None => println!("criterion {id} SKIP {name}: set SKILLHORIZON_STATION_CSV to run"),
            Some(Ok(detail)) => println!("criterion {id} PASS {name} ({secs:.2}s): {detail}"),
            Some(Err(detail)) => {
                failed += 1;
                println!("criterion {id} FAIL {name} ({secs:.2}s): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
