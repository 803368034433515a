use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use skillhorizon::app::{cmd_compare, cmd_evaluate, cmd_report, cmd_synth, synth_spec_from_toml, RunConfig};
use skillhorizon::{Error, Result};

#[derive(Parser)]
#[command(name = "skillhorizon", version, about = "Rolling-origin forecast backtesting with persistence-relative skill")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override a configuration key, e.g. `--set models.0.n_trees=100`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    /// Output directory (or CSV file for `synth`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Run seed; also seeds models and generators without an explicit seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured model and write records, skill, report and plot.
    Evaluate,
    /// Rank models per horizon across runs and flag ordering reversals.
    Compare { runs: Vec<PathBuf> },
    /// Generate a synthetic series as CSV.
    Synth,
    /// Re-render skill.json, report.md and the plot from a run directory.
    Report { run: PathBuf },
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::Evaluate => {
            let path = cli.config.ok_or_else(|| Error::Config("evaluate needs --config".into()))?;
            let cfg = RunConfig::load(&path, &cli.set, cli.seed)?;
            let out = cli
                .out
                .or_else(|| cfg.out.clone())
                .ok_or_else(|| Error::Config("no output directory: pass --out or set `out`".into()))?;
            let doc = cmd_evaluate(&cfg, &out)?;
            for p in doc.profiles {
                let skill: Vec<String> = p.profile.skill.iter().map(|v| format!("{v:.3}")).collect();
                println!(
                    "{} {}: skill [{}] H*=({}, {})",
                    p.profile.model_tag,
                    p.profile.mode.name(),
                    skill.join(", "),
                    p.profile.h_star_max,
                    p.profile.h_star_prefix
                );
            }
            println!("wrote {}", out.display());
        }
        Command::Compare { runs } => {
            let out = cli.out.ok_or_else(|| Error::Config("compare needs --out".into()))?;
            let c = cmd_compare(&runs, &out)?;
            println!("reversals at h: {:?}", c.reversals);
            println!("wrote {}", out.display());
        }
        Command::Synth => {
            let text = match &cli.config {
                Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
                None => String::new(),
            };
            let spec = synth_spec_from_toml(&text, &cli.set, cli.seed)?;
            let out = cli.out.unwrap_or_else(|| PathBuf::from("."));
            println!("wrote {}", cmd_synth(&spec, &out)?.display());
        }
        Command::Report { run } => {
            let out = cli.out.unwrap_or_else(|| run.clone());
            cmd_report(&run, &out)?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = serde_json::json!({
                "error": e.kind(),
                "exit_code": e.exit_code(),
                "message": e.to_string(),
            });
            eprintln!("{line}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
