//! Closed-form skill of the optimal AR(1) forecast against persistence,
//! checked against an AR(1) simulation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use skillhorizon::metrics::{rmse, skill};
use skillhorizon::synth::ar1_skill_oracle;

fn main() -> skillhorizon::Result<()> {
    let phi: f64 = 0.8;
    let n = 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut y = vec![0.0f64; n];
    for t in 1..n {
        let e: f64 = StandardNormal.sample(&mut rng);
        y[t] = phi * y[t - 1] + e;
    }
    println!(" h   oracle   simulated");
    for h in 1..=7 {
        let mut model = Vec::new();
        let mut pers = Vec::new();
        for o in 1..n - h {
            let target = y[o + h - 1];
            model.push((phi.powi(h as i32) * y[o - 1], target));
            pers.push((y[o - 1], target));
        }
        let ss = skill(rmse(&model)?, rmse(&pers)?)?;
        println!("{h:2}   {:.4}   {ss:.4}", ar1_skill_oracle(phi, h)?);
    }
    Ok(())
}
