//! Fit a seasonal ARIMA by exact likelihood, pick an order by AICc and
//! forecast a week ahead.

use skillhorizon::models::{sarima_fit, sarima_forecast, sarima_order_select, OrderGrid, SarimaOrder};
use skillhorizon::synth::{generate, SynthSpec};

fn main() -> skillhorizon::Result<()> {
    let series = generate(&SynthSpec { n_days: 900, rng_seed: 3, ..SynthSpec::default() })?;

    let order = SarimaOrder::seasonal(1, 0, 1, 0, 1, 1, 7);
    let model = sarima_fit(&series, order)?;
    println!(
        "fixed order: ar {:?} ma {:?} sma {:?} sigma2 {:.3} loglik {:.2} aicc {:.2}",
        model.params.ar, model.params.ma, model.params.sma, model.params.sigma2, model.loglik, model.aicc
    );

    let grid = OrderGrid {
        p: vec![0, 1, 2],
        d: vec![0],
        q: vec![0, 1],
        sp: vec![0],
        sd: vec![0, 1],
        sq: vec![0, 1],
        s: 7,
    };
    let outcome = sarima_order_select(&series, &grid)?;
    let mut table: Vec<_> = outcome.candidates.iter().filter_map(|(o, r)| r.as_ref().ok().map(|a| (*o, *a))).collect();
    table.sort_by(|a, b| a.1.total_cmp(&b.1));
    for (o, aicc) in table.iter().take(5) {
        println!("  {o:?}  aicc {aicc:.2}");
    }
    println!("selected {:?}", outcome.selected.order);

    let fc = sarima_forecast(&outcome.selected, 7)?;
    for (h, v) in fc.values.iter().enumerate() {
        println!("h={} ({}): {v:.2}", h + 1, fc.origin_date + chrono::Days::new(h as u64));
    }
    Ok(())
}
