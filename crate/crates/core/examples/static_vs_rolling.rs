//! The same models scored under one static split and under rolling monthly
//! folds, with horizons where their ranking flips.

use chrono::NaiveDate;
use skillhorizon::metrics::{skill_profile, Aggregation, ErrorMetric};
use skillhorizon::models::GbtHyper;
use skillhorizon::protocol::{rolling_folds, run_protocol, FoldPlan, ForecastRecordSet, PreprocKind};
use skillhorizon::synth::{generate, SynthSpec};
use skillhorizon::ForecasterSpec;

fn main() -> skillhorizon::Result<()> {
    let series = generate(&SynthSpec { n_days: 4 * 365, rng_seed: 21, ..SynthSpec::default() })?;
    let boundary = NaiveDate::from_ymd_opt(2019, 10, 1).unwrap();
    let plans = [
        ("static", FoldPlan::single(&series, boundary, 7)?),
        ("rolling", rolling_folds(&series, boundary, 7, 15)?),
    ];
    let models = [
        ("seasonal", ForecasterSpec::SeasonalNaive { period: 7 }),
        ("gbt", ForecasterSpec::Gbt(GbtHyper { n_trees: 80, max_depth: 3, refit_every: 3, ..GbtHyper::default() })),
    ];
    let mut table = Vec::new();
    for (name, plan) in &plans {
        let mut set = ForecastRecordSet::default();
        for (tag, spec) in &models {
            set.merge(run_protocol(&series, tag, spec, plan, PreprocKind::None)?)?;
        }
        let skills: Vec<Vec<f64>> = models
            .iter()
            .map(|(tag, _)| skill_profile(&set.records, tag, Aggregation::Pooled, ErrorMetric::Rmse).map(|p| p.skill))
            .collect::<skillhorizon::Result<_>>()?;
        for ((tag, _), s) in models.iter().zip(&skills) {
            let cells: Vec<String> = s.iter().map(|v| format!("{v:+.3}")).collect();
            println!("{name:8} {tag:9} [{}]", cells.join(" "));
        }
        table.push(skills);
    }
    let flips: Vec<usize> = (0..7)
        .filter(|&h| (table[0][0][h] > table[0][1][h]) != (table[1][0][h] > table[1][1][h]))
        .map(|h| h + 1)
        .collect();
    println!("ranking flips at h: {flips:?}");
    Ok(())
}
