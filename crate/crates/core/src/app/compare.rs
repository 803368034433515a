use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{SkillDocument, SKILL_FILE};
use crate::metrics::Aggregation;
use crate::{Error, Result};

/// Models ordered by pooled skill (best first) for one run and horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizonRanking {
    pub run: String,
    pub h: usize,
    pub order: Vec<String>,
    pub skill: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub runs: Vec<String>,
    pub protocols: Vec<String>,
    pub data_sha256: String,
    pub h_max: usize,
    /// Tags present in every run; rankings are restricted to these.
    pub common_models: Vec<String>,
    pub rankings: Vec<HorizonRanking>,
    /// Horizons where the common models are ordered differently by some run.
    pub reversals: Vec<usize>,
}

fn ranking(doc: &SkillDocument, run: &str, h: usize, tags: &[String]) -> Result<HorizonRanking> {
    let mut rows: Vec<(String, f64)> = tags
        .iter()
        .map(|t| {
            let p = doc
                .profile(t, Aggregation::Pooled)
                .ok_or_else(|| Error::Input(format!("{run}: no pooled profile for {t}")))?;
            let s = *p
                .profile
                .skill
                .get(h - 1)
                .ok_or_else(|| Error::Input(format!("{run}: {t} has no skill at h={h}")))?;
            Ok((t.clone(), s))
        })
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(HorizonRanking {
        run: run.to_string(),
        h,
        order: rows.iter().map(|r| r.0.clone()).collect(),
        skill: rows.iter().map(|r| r.1).collect(),
    })
}

/// Ranks models per horizon in each run and flags horizons whose ordering
/// differs between runs.
pub fn compare_documents(runs: &[(String, SkillDocument)]) -> Result<Comparison> {
    if runs.len() < 2 {
        return Err(Error::Input("compare needs at least two runs".into()));
    }
    let (first_name, first) = &runs[0];
    for (name, doc) in &runs[1..] {
        if doc.data_sha256 != first.data_sha256 {
            return Err(Error::Incompatible(format!(
                "{name} was computed on different data than {first_name}"
            )));
        }
        if doc.h_max != first.h_max {
            return Err(Error::Incompatible(format!(
                "{name} has h_max {} but {first_name} has {}",
                doc.h_max, first.h_max
            )));
        }
    }
    let common: Vec<String> = first
        .tags()
        .into_iter()
        .filter(|t| runs.iter().all(|(_, d)| d.tags().contains(t)))
        .collect();
    if common.is_empty() {
        return Err(Error::Incompatible("no model tag is shared by all runs".into()));
    }
    let mut rankings = Vec::new();
    let mut reversals = Vec::new();
    for h in 1..=first.h_max {
        let per_run: Vec<HorizonRanking> = runs
            .iter()
            .map(|(name, doc)| ranking(doc, name, h, &common))
            .collect::<Result<_>>()?;
        if per_run.windows(2).any(|w| w[0].order != w[1].order) {
            reversals.push(h);
        }
        rankings.extend(per_run);
    }
    Ok(Comparison {
        runs: runs.iter().map(|r| r.0.clone()).collect(),
        protocols: runs.iter().map(|r| r.1.protocol.clone()).collect(),
        data_sha256: first.data_sha256.clone(),
        h_max: first.h_max,
        common_models: common,
        rankings,
        reversals,
    })
}

pub fn comparison_markdown(c: &Comparison) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Run comparison\n");
    for (r, p) in c.runs.iter().zip(&c.protocols) {
        let _ = writeln!(s, "- `{r}`: {p}");
    }
    let _ = writeln!(s, "- data sha256: `{}`", c.data_sha256);
    let flagged: Vec<String> = c.reversals.iter().map(|h| h.to_string()).collect();
    let _ = writeln!(
        s,
        "- ranking reversals at h: {}\n",
        if flagged.is_empty() { "none".to_string() } else { flagged.join(", ") }
    );
    let _ = writeln!(s, "| h | run | rank | model | pooled skill | reversal |");
    let _ = writeln!(s, "|---|---|---|---|---|---|");
    for r in &c.rankings {
        let flag = if c.reversals.contains(&r.h) { "yes" } else { "" };
        for (i, (m, v)) in r.order.iter().zip(&r.skill).enumerate() {
            let _ = writeln!(s, "| {} | {} | {} | {m} | {v:.3} | {flag} |", r.h, r.run, i + 1);
        }
    }
    s
}

/// Reads `skill.json` from each run directory and writes `compare.json`
/// and `compare.md` into `out`.
pub fn cmd_compare(run_dirs: &[PathBuf], out: &Path) -> Result<Comparison> {
    let runs: Vec<(String, SkillDocument)> = run_dirs
        .iter()
        .map(|d| {
            let path = d.join(SKILL_FILE);
            let text =
                std::fs::read_to_string(&path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            Ok((d.display().to_string(), serde_json::from_str(&text)?))
        })
        .collect::<Result<_>>()?;
    let c = compare_documents(&runs)?;
    std::fs::create_dir_all(out)?;
    let mut json = serde_json::to_string_pretty(&c)?;
    json.push('\n');
    std::fs::write(out.join("compare.json"), json)?;
    std::fs::write(out.join("compare.md"), comparison_markdown(&c))?;
    Ok(c)
}
