use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::RunManifest;
use crate::metrics::{error_table, fold_distribution, skill_profile, Aggregation, ErrorCell, FoldSkillSummary, SkillProfile};
use crate::protocol::{FoldPlan, ForecastRecord};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    #[serde(flatten)]
    pub profile: SkillProfile,
    /// Per-fold skill summaries, one per horizon with at least one fold.
    pub folds: Vec<FoldSkillSummary>,
}

/// Contents of `skill.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkillDocument {
    pub data_sha256: String,
    pub h_max: usize,
    pub protocol: String,
    pub config: super::RunConfig,
    pub profiles: Vec<ProfileEntry>,
    pub errors: Vec<ErrorCell>,
}

impl SkillDocument {
    pub fn profile(&self, tag: &str, mode: Aggregation) -> Option<&ProfileEntry> {
        self.profiles
            .iter()
            .find(|p| p.profile.model_tag == tag && p.profile.mode == mode)
    }

    /// Model tags in configuration order.
    pub fn tags(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for p in &self.profiles {
            if !out.contains(&p.profile.model_tag) {
                out.push(p.profile.model_tag.clone());
            }
        }
        out
    }
}

pub fn protocol_label(plan: &FoldPlan, manifest: &RunManifest) -> String {
    match &manifest.config.protocol {
        super::ProtocolConfig::Static { boundary } => format!("static split at {boundary}"),
        super::ProtocolConfig::Rolling { min_test, .. } => format!(
            "rolling origin, {} monthly folds from {} (min_test {min_test})",
            plan.folds.len(),
            plan.folds.first().map(|f| f.test_start.to_string()).unwrap_or_default()
        ),
    }
}

pub fn skill_document(records: &[ForecastRecord], manifest: &RunManifest) -> Result<SkillDocument> {
    let metric = manifest.config.metric;
    let mut profiles = Vec::new();
    for m in &manifest.config.models {
        if !records.iter().any(|r| r.model_tag == m.tag) {
            return Err(Error::Input(format!("records contain no rows for model {:?}", m.tag)));
        }
        let folds: Vec<FoldSkillSummary> = (1..=manifest.config.h_max)
            .filter_map(|h| fold_distribution(records, &m.tag, h, metric).ok())
            .collect();
        for mode in [Aggregation::Pooled, Aggregation::MeanOfFolds] {
            profiles.push(ProfileEntry {
                profile: skill_profile(records, &m.tag, mode, metric)?,
                folds: folds.clone(),
            });
        }
    }
    Ok(SkillDocument {
        data_sha256: manifest.data.sha256.clone(),
        h_max: manifest.config.h_max,
        protocol: protocol_label(&manifest.plan, manifest),
        config: manifest.config.clone(),
        profiles,
        errors: error_table(records)?,
    })
}

fn num(v: f64) -> String {
    format!("{v:.3}")
}

pub fn report_markdown(doc: &SkillDocument, manifest: &RunManifest) -> String {
    let mut s = String::new();
    let d = &manifest.data;
    let metric = manifest.config.metric.name();
    let _ = writeln!(s, "# Skill report\n");
    let _ = writeln!(s, "- data: `{}`, {} to {}, {} slots, {} present", d.name, d.start, d.end, d.slots, d.present);
    let _ = writeln!(s, "- data sha256: `{}`", d.sha256);
    let _ = writeln!(
        s,
        "- quality filter: {} of {} present values retained ({:.1}%), {:.1}% of calendar slots",
        d.filter.retained_count,
        d.filter.raw_count,
        100.0 * d.filter.retention_fraction,
        100.0 * d.filter.calendar_retention
    );
    let _ = writeln!(s, "- protocol: {}", doc.protocol);
    if !manifest.plan.dropped.is_empty() {
        let months: Vec<String> = manifest
            .plan
            .dropped
            .iter()
            .map(|f| format!("{} ({} pairs)", f.test_start.format("%Y-%m"), f.valid_pairs))
            .collect();
        let _ = writeln!(s, "- months below min_test: {}", months.join(", "));
    }
    let _ = writeln!(s, "- skill metric: {metric}; preprocessing: {:?}", manifest.config.preprocessing);
    let _ = writeln!(s, "- H_max: {}\n", doc.h_max);

    let header: Vec<String> = (1..=doc.h_max).map(|h| format!("h={h}")).collect();
    let _ = writeln!(s, "## Skill versus persistence ({metric})\n");
    let _ = writeln!(s, "| model | mode | {} | H* max | H* prefix |", header.join(" | "));
    let _ = writeln!(s, "|---|---|{}---|---|", "---|".repeat(doc.h_max));
    for p in &doc.profiles {
        let cells: Vec<String> = p.profile.skill.iter().map(|v| num(*v)).collect();
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            p.profile.model_tag,
            p.profile.mode.name(),
            cells.join(" | "),
            p.profile.h_star_max,
            p.profile.h_star_prefix
        );
    }

    let _ = writeln!(s, "\n## Per-fold skill\n");
    let _ = writeln!(s, "| model | h | folds | non-positive | median | mean |");
    let _ = writeln!(s, "|---|---|---|---|---|---|");
    for tag in doc.tags() {
        if let Some(p) = doc.profile(&tag, Aggregation::Pooled) {
            for f in &p.folds {
                let _ = writeln!(
                    s,
                    "| {tag} | {} | {} | {} | {} | {} |",
                    f.h,
                    f.total,
                    f.non_positive,
                    num(f.median),
                    num(f.mean)
                );
            }
        }
    }

    let _ = writeln!(s, "\n## Errors\n");
    let _ = writeln!(s, "| model | h | RMSE | MAE | persistence RMSE | persistence MAE | pairs |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for c in &doc.errors {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} |",
            c.model_tag,
            c.h,
            num(c.rmse),
            num(c.mae),
            num(c.persistence_rmse),
            num(c.persistence_mae),
            c.n_pairs
        );
    }

    let _ = writeln!(s, "\n## Run accounting\n");
    for p in &manifest.models {
        let k = &p.skipped;
        let _ = writeln!(
            s,
            "- {}: {} failed folds; skipped {} origins without lag-1, {} without model inputs, {} missing targets, {} targets past the end",
            p.model_tag,
            p.fold_failures.len(),
            k.origins_without_persistence,
            k.origins_without_features,
            k.missing_actuals,
            k.beyond_end
        );
        for f in &p.fold_failures {
            let _ = writeln!(s, "  - fold {}: {}", f.fold_id, f.message);
        }
        if let Some(fit) = &p.fitted {
            if let Some(order) = fit.get("order").and_then(|o| o.as_str()) {
                let _ = writeln!(s, "  - fitted order {order} on the initial window");
            }
        }
    }
    let _ = writeln!(s, "\n## Resolved configuration\n\n```toml\n{}```", manifest.config.to_toml());
    s
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

/// Skill against horizon for every model, pooled and mean-of-folds.
pub fn skill_svg(doc: &SkillDocument) -> String {
    let (w, h) = (720.0, 420.0);
    let (left, right, top, bottom) = (60.0, 180.0, 40.0, 50.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let all: Vec<f64> = doc.profiles.iter().flat_map(|p| p.profile.skill.iter().copied()).collect();
    let lo = all.iter().copied().fold(-0.1f64, f64::min);
    let hi = all.iter().copied().fold(0.1f64, f64::max);
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let n = doc.h_max.max(2) as f64;
    let x = |hz: f64| left + pw * (hz - 1.0) / (n - 1.0);
    let y = |v: f64| top + ph * (hi - v) / (hi - lo);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">Skill versus persistence ({})</text>"#,
        left + pw / 2.0,
        doc.config.metric.name()
    );
    let _ = writeln!(
        s,
        r##"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>"##
    );
    for i in 0..=4 {
        let v = lo + (hi - lo) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.2}</text>"##,
            left - 6.0,
            y(v) + 4.0
        );
    }
    for hz in 1..=doc.h_max {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{hz}</text>"#,
            x(hz as f64),
            top + ph + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">horizon (days)</text>"#,
        left + pw / 2.0,
        h - 12.0
    );
    let _ = writeln!(
        s,
        r##"<line x1="{left}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#000" stroke-dasharray="5,4"/>"##,
        y(0.0),
        left + pw,
        y(0.0)
    );
    for (i, p) in doc.profiles.iter().enumerate() {
        let color = PALETTE[(i / 2) % PALETTE.len()];
        let dash = if p.profile.mode == Aggregation::Pooled { "" } else { r#" stroke-dasharray="2,3""# };
        let pts: Vec<String> = p
            .profile
            .skill
            .iter()
            .enumerate()
            .map(|(j, v)| format!("{:.2},{:.2}", x(j as f64 + 1.0), y(*v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#,
            pts.join(" ")
        );
        for pt in &pts {
            let (px, py) = pt.split_once(',').expect("point");
            let _ = writeln!(s, r#"<circle cx="{px}" cy="{py}" r="3" fill="{color}"/>"#);
        }
        let ly = top + 14.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"{dash}/>"#,
            left + pw + 12.0,
            left + pw + 36.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}">{} ({})</text>"#,
            left + pw + 42.0,
            ly + 4.0,
            escape(&p.profile.model_tag),
            p.profile.mode.name()
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
