//! Drive a full run from a TOML configuration, as the binary does, then
//! re-render the report from the written records.
//!
//! cargo run --example evaluate_from_config -- configs/synthetic_ar1.toml

use skillhorizon::app::{cmd_evaluate, cmd_report, RunConfig};

const INLINE: &str = r#"
seed = 3
h_max = 5
[data.synth]
n_days = 800
[protocol]
kind = "rolling"
initial_train_end = "2018-06-01"
[[models]]
tag = "persistence"
kind = "persistence"
[[models]]
tag = "weekly"
kind = "seasonal_naive"
period = 7
"#;

fn main() -> skillhorizon::Result<()> {
    let overrides = vec!["h_max=4".to_string()];
    let cfg = match std::env::args().nth(1) {
        Some(path) => RunConfig::load(path.as_ref(), &overrides, None)?,
        None => RunConfig::from_toml_str(INLINE, &overrides, None)?,
    };
    let out = tempfile::tempdir()?;
    let doc = cmd_evaluate(&cfg, out.path())?;
    println!("{}", doc.protocol);
    for p in &doc.profiles {
        println!("{:12} {:13} {:?}", p.profile.model_tag, p.profile.mode.name(), p.profile.skill);
    }
    let again = tempfile::tempdir()?;
    cmd_report(out.path(), again.path())?;
    let same = std::fs::read(out.path().join("skill.json"))? == std::fs::read(again.path().join("skill.json"))?;
    println!("report re-rendered identically: {same}");
    print!("{}", std::fs::read_to_string(out.path().join("report.md"))?.lines().take(12).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}
