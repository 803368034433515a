use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use toml::Value;

use crate::metrics::ErrorMetric;
use crate::models::ForecasterSpec;
use crate::protocol::{PreprocKind, DEFAULT_MIN_TEST};
use crate::series::{CsvSpec, QualityPolicy};
use crate::synth::SynthSpec;
use crate::{Error, Result, DEFAULT_H_MAX};

/// A complete evaluation run, as read from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_h_max")]
    pub h_max: usize,
    #[serde(default)]
    pub preprocessing: PreprocKind,
    #[serde(default)]
    pub metric: ErrorMetric,
    /// Output directory; `--out` takes precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub data: DataConfig,
    pub protocol: ProtocolConfig,
    pub models: Vec<ModelConfig>,
}

fn default_h_max() -> usize {
    DEFAULT_H_MAX
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    /// CSV file, relative to the configuration file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub columns: CsvSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synth: Option<SynthSpec>,
    #[serde(default)]
    pub quality: QualityPolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProtocolConfig {
    /// One train/test split at `boundary`.
    Static { boundary: NaiveDate },
    /// Monthly expanding-window folds.
    Rolling {
        initial_train_end: NaiveDate,
        #[serde(default = "default_min_test")]
        min_test: usize,
    },
}

fn default_min_test() -> usize {
    DEFAULT_MIN_TEST
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub tag: String,
    #[serde(flatten)]
    pub spec: ForecasterSpec,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.h_max == 0 {
            return Err(Error::Config("h_max must be >= 1".into()));
        }
        if self.models.is_empty() {
            return Err(Error::Config("at least one model is required".into()));
        }
        for (i, m) in self.models.iter().enumerate() {
            if m.tag.is_empty() || m.tag.contains([',', '"', '\n']) {
                return Err(Error::Config(format!("invalid model tag {:?}", m.tag)));
            }
            if self.models[..i].iter().any(|o| o.tag == m.tag) {
                return Err(Error::Config(format!("duplicate model tag {:?}", m.tag)));
            }
            m.spec.validate()?;
        }
        match (&self.data.csv, &self.data.synth) {
            (Some(_), Some(_)) => Err(Error::Config("data: give either csv or synth, not both".into())),
            (None, None) => Err(Error::Config("data: one of csv or synth is required".into())),
            (None, Some(s)) => s.validate(),
            (Some(_), None) => Ok(()),
        }
    }

    /// Parses a TOML document, applies overrides and fills seeds.
    pub fn from_toml_str(text: &str, overrides: &[String], seed: Option<u64>) -> Result<Self> {
        let doc = resolve_document(text, overrides, seed)?;
        let cfg: RunConfig = doc.try_into().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a file; a relative CSV path is taken relative to the file.
    pub fn load(path: &Path, overrides: &[String], seed: Option<u64>) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml_str(&text, overrides, seed)?;
        if let Some(csv) = &cfg.data.csv {
            if csv.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                cfg.data.csv = Some(base.join(csv));
            }
        }
        Ok(cfg)
    }

    /// The resolved configuration, defaults included, as TOML.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }
}

/// Parses `text`, applies `--set` overrides and `--seed`, and propagates the
/// run seed to model and generator seeds that were left unset.
pub fn resolve_document(text: &str, overrides: &[String], seed: Option<u64>) -> Result<Value> {
    let mut doc: Value = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
    for o in overrides {
        apply_override(&mut doc, o)?;
    }
    let table = doc.as_table_mut().ok_or_else(|| Error::Config("top level must be a table".into()))?;
    if let Some(s) = seed {
        table.insert("seed".into(), Value::Integer(to_i64(s)?));
    }
    let run_seed = match table.get("seed") {
        None => 0,
        Some(Value::Integer(i)) if *i >= 0 => *i,
        Some(other) => return Err(Error::Config(format!("seed must be a non-negative integer, got {other}"))),
    };
    if let Some(Value::Array(models)) = table.get_mut("models") {
        for m in models.iter_mut().filter_map(Value::as_table_mut) {
            if m.get("kind").and_then(Value::as_str) == Some("gbt") && !m.contains_key("rng_seed") {
                m.insert("rng_seed".into(), Value::Integer(run_seed));
            }
        }
    }
    for path in [&["data", "synth"][..], &["synth"][..]] {
        if let Some(Value::Table(t)) = get_path_mut(&mut doc, path) {
            t.entry("rng_seed").or_insert(Value::Integer(run_seed));
        }
    }
    Ok(doc)
}

fn to_i64(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Config(format!("seed {v} too large")))
}

fn get_path_mut<'a>(doc: &'a mut Value, path: &[&str]) -> Option<&'a mut Value> {
    path.iter().try_fold(doc, |v, k| v.as_table_mut()?.get_mut(*k))
}

/// Applies `a.b.c=value`. The value is read as a TOML literal when it
/// parses as one and as a bare string otherwise. Numeric path components
/// index into arrays.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override {assignment:?} is not key=value")))?;
    let key = key.trim();
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .filter(|v| !v.is_datetime())
        .unwrap_or_else(|| Value::String(raw.to_string()));
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Config(format!("bad override key {key:?}")));
    }
    let mut cur = doc;
    for (i, part) in parts.iter().enumerate() {
        let last = i + 1 == parts.len();
        cur = match cur {
            Value::Table(t) => {
                if last {
                    t.insert(part.to_string(), value);
                    return Ok(());
                }
                t.entry(part.to_string()).or_insert_with(|| Value::Table(toml::Table::new()))
            }
            Value::Array(a) => {
                let idx: usize = part
                    .parse()
                    .map_err(|_| Error::Config(format!("{key}: {part:?} is not an array index")))?;
                let len = a.len();
                let slot = a
                    .get_mut(idx)
                    .ok_or_else(|| Error::Config(format!("{key}: index {idx} out of range (len {len})")))?;
                if last {
                    *slot = value;
                    return Ok(());
                }
                slot
            }
            _ => return Err(Error::Config(format!("{key}: {part:?} is not inside a table"))),
        };
    }
    unreachable!("loop returns on the last component")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::GbtHyper;

    const BASE: &str = r#"
        [data.synth]
        n_days = 400
        [protocol]
        kind = "rolling"
        initial_train_end = "2017-09-01"
        [[models]]
        tag = "pers"
        kind = "persistence"
        [[models]]
        tag = "gbt"
        kind = "gbt"
        n_trees = 10
    "#;

    #[test]
    fn defaults_and_seed_propagation() {
        let cfg = RunConfig::from_toml_str(BASE, &[], Some(9)).unwrap();
        assert_eq!(cfg.h_max, 7);
        assert_eq!(cfg.metric, ErrorMetric::Rmse);
        assert_eq!(
            cfg.protocol,
            ProtocolConfig::Rolling {
                initial_train_end: NaiveDate::from_ymd_opt(2017, 9, 1).unwrap(),
                min_test: 15
            }
        );
        match &cfg.models[1].spec {
            ForecasterSpec::Gbt(h) => {
                assert_eq!(h.rng_seed, 9);
                assert_eq!(h.max_depth, GbtHyper::default().max_depth);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(cfg.data.synth.as_ref().unwrap().rng_seed, 9);
    }

    #[test]
    fn overrides() {
        let sets = vec![
            "h_max=3".to_string(),
            "models.1.n_trees=25".to_string(),
            "protocol.min_test=10".to_string(),
            "metric=mae".to_string(),
        ];
        let cfg = RunConfig::from_toml_str(BASE, &sets, None).unwrap();
        assert_eq!(cfg.h_max, 3);
        assert_eq!(cfg.metric, ErrorMetric::Mae);
        match &cfg.models[1].spec {
            ForecasterSpec::Gbt(h) => assert_eq!(h.n_trees, 25),
            other => panic!("{other:?}"),
        }
        assert!(matches!(cfg.protocol, ProtocolConfig::Rolling { min_test: 10, .. }));
    }

    #[test]
    fn resolved_config_round_trips() {
        let cfg = RunConfig::from_toml_str(BASE, &[], None).unwrap();
        let again = RunConfig::from_toml_str(&cfg.to_toml(), &[], None).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn config_errors() {
        let cases = [
            BASE.replace("n_trees = 10", "n_trees = 10\nbogus = 1"),
            BASE.replace("tag = \"gbt\"", "tag = \"pers\""),
            format!("h_max = 0\n{BASE}"),
            BASE.replace("kind = \"rolling\"", "kind = \"sideways\""),
        ];
        for text in &cases {
            assert!(matches!(RunConfig::from_toml_str(text, &[], None), Err(Error::Config(_))), "{text}");
        }
        assert!(RunConfig::from_toml_str(BASE, &["noequals".into()], None).is_err());
        assert!(RunConfig::from_toml_str(BASE, &["models.7.n_trees=1".into()], None).is_err());
    }
}
