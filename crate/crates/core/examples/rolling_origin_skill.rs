//! Rolling-origin evaluation with monthly folds: skill per horizon against
//! persistence, pooled and averaged over folds, plus the per-fold spread.

use chrono::NaiveDate;
use skillhorizon::metrics::{fold_distribution, skill_profile, Aggregation, ErrorMetric};
use skillhorizon::models::SarimaOrder;
use skillhorizon::protocol::{rolling_folds, run_protocol, ForecastRecordSet, PreprocKind};
use skillhorizon::synth::{generate, SynthSpec};
use skillhorizon::ForecasterSpec;

fn main() -> skillhorizon::Result<()> {
    let series = generate(&SynthSpec { n_days: 4 * 365, rng_seed: 9, ..SynthSpec::default() })?;
    let plan = rolling_folds(&series, NaiveDate::from_ymd_opt(2019, 1, 1).unwrap(), 7, 15)?;
    println!("{} folds, {} dropped", plan.folds.len(), plan.dropped.len());

    let models = [
        ("seasonal", ForecasterSpec::SeasonalNaive { period: 7 }),
        ("sarima", ForecasterSpec::Sarima { order: SarimaOrder::seasonal(1, 0, 1, 0, 1, 1, 7) }),
    ];
    let mut set = ForecastRecordSet::default();
    for (tag, spec) in &models {
        set.merge(run_protocol(&series, tag, spec, &plan, PreprocKind::None)?)?;
    }
    for (tag, _) in &models {
        for mode in [Aggregation::Pooled, Aggregation::MeanOfFolds] {
            let p = skill_profile(&set.records, tag, mode, ErrorMetric::Rmse)?;
            let cells: Vec<String> = p.skill.iter().map(|v| format!("{v:+.3}")).collect();
            println!("{tag:9} {:13} [{}] H*=({}, {})", mode.name(), cells.join(" "), p.h_star_max, p.h_star_prefix);
        }
        let d = fold_distribution(&set.records, tag, 1, ErrorMetric::Rmse)?;
        println!("          h=1 folds: {} non-positive of {}, median {:+.3}", d.non_positive, d.total, d.median);
    }
    Ok(())
}
