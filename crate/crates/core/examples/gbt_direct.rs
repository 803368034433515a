//! Direct multi-horizon gradient boosting on lag and calendar features.

use chrono::Days;
use skillhorizon::models::{build_supervised, feature_row, gbt_fit, gbt_forecast, persistence_forecast, GbtHyper};
use skillhorizon::synth::{generate, SynthSpec};

fn main() -> skillhorizon::Result<()> {
    let series = generate(&SynthSpec { n_days: 1200, rng_seed: 4, ..SynthSpec::default() })?;
    let hyper = GbtHyper { n_trees: 150, max_depth: 3, ..GbtHyper::default() };
    let h_max = 7;

    let origin = series.end_date() - Days::new(h_max as u64 - 1);
    let train = series.before(origin);
    let data = build_supervised(&train, &hyper.lags, h_max, hyper.use_calendar)?;
    println!("{} training rows, features {:?}", data.len(), data.feature_names);

    let model = gbt_fit(&data, &hyper)?;
    let x = feature_row(&train, origin, &hyper.lags, hyper.use_calendar).expect("lags present");
    let fc = gbt_forecast(&model, origin, &x)?;
    let pers = persistence_forecast(&train, h_max)?;
    println!(" h  target       actual   gbt      persistence");
    for h in 1..=h_max {
        let target = origin + Days::new(h as u64 - 1);
        let actual = series.value_on(target).map_or("--".into(), |v| format!("{v:7.2}"));
        println!("{h:2}  {target}  {actual}  {:7.2}  {:7.2}", fc.at(h).unwrap(), pers.at(h).unwrap());
    }
    Ok(())
}
