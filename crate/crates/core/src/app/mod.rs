//! Run configuration and the commands behind the `skillhorizon` binary.
//!
//! Every command writes its artifacts once, after all computation, so a
//! rerun with the same configuration produces byte-identical files.

mod compare;
mod config;
mod render;

use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use compare::{cmd_compare, Comparison, HorizonRanking};
pub use config::{apply_override, resolve_document, DataConfig, ModelConfig, ProtocolConfig, RunConfig};
pub use render::{report_markdown, skill_document, skill_svg, ProfileEntry, SkillDocument};

use crate::protocol::{read_records_file, rolling_folds, run_protocol, write_records_file, FoldPlan, ForecastRecordSet, RunProvenance};
use crate::series::{load_csv, quality_filter, summary_stats, write_csv, CsvSpec, FilterReport, StatsReport, DEFAULT_EXCEEDANCE_THRESHOLD};
use crate::synth::{generate, SynthSpec};
use crate::{Error, Result, TimeSeries};

pub const RECORDS_FILE: &str = "records.csv";
pub const RUN_FILE: &str = "run.json";
pub const SKILL_FILE: &str = "skill.json";
pub const REPORT_FILE: &str = "report.md";
pub const PLOT_FILE: &str = "skill_profile.svg";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSummary {
    pub name: String,
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub slots: usize,
    pub present: usize,
    /// SHA-256 of the filtered series in canonical CSV form.
    pub sha256: String,
    pub filter: FilterReport,
    pub stats: Option<StatsReport>,
}

/// Contents of `run.json`: everything needed to re-render a report from
/// `records.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub config: RunConfig,
    pub data: DataSummary,
    pub plan: FoldPlan,
    pub models: Vec<RunProvenance>,
}

/// SHA-256 of a series written as `date,value` CSV.
pub fn series_sha256(series: &TimeSeries) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(series, &mut buf, &CsvSpec::default())?;
    Ok(Sha256::digest(&buf).iter().map(|b| format!("{b:02x}")).collect())
}

/// Loads (or generates) the configured series and applies the quality policy.
pub fn load_data(data: &DataConfig) -> Result<(TimeSeries, DataSummary)> {
    let raw = match (&data.csv, &data.synth) {
        (Some(path), None) => load_csv(path, &data.columns)?,
        (None, Some(spec)) => generate(spec)?,
        _ => return Err(Error::Config("data: exactly one of csv or synth is required".into())),
    };
    let (series, filter) = quality_filter(&raw, &data.quality);
    let summary = DataSummary {
        name: series.name().to_string(),
        start: series.start_date(),
        end: series.end_date(),
        slots: series.len(),
        present: series.present_count(),
        sha256: series_sha256(&series)?,
        filter,
        stats: summary_stats(&series, DEFAULT_EXCEEDANCE_THRESHOLD).ok(),
    };
    Ok((series, summary))
}

pub fn build_plan(series: &TimeSeries, cfg: &RunConfig) -> Result<FoldPlan> {
    match &cfg.protocol {
        ProtocolConfig::Static { boundary } => FoldPlan::single(series, *boundary, cfg.h_max),
        ProtocolConfig::Rolling {
            initial_train_end,
            min_test,
        } => rolling_folds(series, *initial_train_end, cfg.h_max, *min_test),
    }
}

/// Runs every configured model over one plan.
pub fn evaluate(cfg: &RunConfig) -> Result<(ForecastRecordSet, RunManifest)> {
    cfg.validate()?;
    let (series, data) = load_data(&cfg.data)?;
    let plan = build_plan(&series, cfg)?;
    let mut set = ForecastRecordSet::default();
    for m in &cfg.models {
        set.merge(run_protocol(&series, &m.tag, &m.spec, &plan, cfg.preprocessing)?)?;
    }
    let manifest = RunManifest {
        tool: format!("skillhorizon {}", env!("CARGO_PKG_VERSION")),
        config: cfg.clone(),
        data,
        plan,
        models: set.provenance.clone(),
    };
    Ok((set, manifest))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn render_all(records: &[crate::protocol::ForecastRecord], manifest: &RunManifest, out: &Path) -> Result<SkillDocument> {
    let doc = skill_document(records, manifest)?;
    write_json(&out.join(SKILL_FILE), &doc)?;
    std::fs::write(out.join(REPORT_FILE), report_markdown(&doc, manifest))?;
    std::fs::write(out.join(PLOT_FILE), skill_svg(&doc))?;
    Ok(doc)
}

/// Evaluates `cfg` and writes `records.csv`, `run.json`, `skill.json`,
/// `report.md` and `skill_profile.svg` into `out`.
pub fn cmd_evaluate(cfg: &RunConfig, out: &Path) -> Result<SkillDocument> {
    let (set, manifest) = evaluate(cfg)?;
    std::fs::create_dir_all(out)?;
    write_records_file(&set.records, &out.join(RECORDS_FILE))?;
    write_json(&out.join(RUN_FILE), &manifest)?;
    render_all(&set.records, &manifest, out)
}

/// Reads a run directory's manifest, records and skill document.
pub fn load_run(dir: &Path) -> Result<(RunManifest, Vec<crate::protocol::ForecastRecord>)> {
    let text = std::fs::read_to_string(dir.join(RUN_FILE))
        .map_err(|e| Error::Input(format!("{}: {e}", dir.join(RUN_FILE).display())))?;
    let manifest: RunManifest = serde_json::from_str(&text)?;
    let records = read_records_file(&dir.join(RECORDS_FILE))?;
    Ok((manifest, records))
}

/// Re-renders `skill.json`, `report.md` and the plot from a run directory
/// without recomputing forecasts.
pub fn cmd_report(run_dir: &Path, out: &Path) -> Result<SkillDocument> {
    let (manifest, records) = load_run(run_dir)?;
    std::fs::create_dir_all(out)?;
    render_all(&records, &manifest, out)
}

/// Reads the generator spec from `data.synth` or `synth` in a TOML
/// document (defaults otherwise).
pub fn synth_spec_from_toml(text: &str, overrides: &[String], seed: Option<u64>) -> Result<SynthSpec> {
    let doc = resolve_document(text, overrides, seed)?;
    let table = doc
        .get("data")
        .and_then(|d| d.get("synth"))
        .or_else(|| doc.get("synth"))
        .cloned()
        .unwrap_or_else(|| {
            let mut t = toml::Table::new();
            t.insert("rng_seed".into(), doc.get("seed").cloned().unwrap_or(toml::Value::Integer(0)));
            toml::Value::Table(t)
        });
    let spec: SynthSpec = table.try_into().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
    spec.validate()?;
    Ok(spec)
}

/// Generates a series and writes it as CSV. `out` ending in `.csv` is the
/// file; anything else is a directory receiving `<name>.csv`.
pub fn cmd_synth(spec: &SynthSpec, out: &Path) -> Result<PathBuf> {
    let series = generate(spec)?;
    let path = if out.extension().is_some_and(|e| e == "csv") {
        out.to_path_buf()
    } else {
        out.join(format!("{}.csv", spec.name))
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    crate::series::write_csv_file(&series, &path, &CsvSpec::default())?;
    Ok(path)
}
