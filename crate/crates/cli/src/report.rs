//! The JSON report document. Field order here is the field order on disk.

use serde::Serialize;
use trustrec::SolveReport64;

use crate::ingest::CatalogRecord;
use crate::run::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub model: &'static str,
    pub measure: &'static str,
    /// Multinomial decision rule; `null` for the linear model.
    pub decision_rule: Option<&'static str>,
    pub tau: f64,
    pub max_rating: f64,
    pub epsilon: f64,
    pub clamp: bool,
    pub seed: u64,
    pub item_ids: Vec<String>,
    pub ratings: Vec<f64>,
    pub profits: Vec<f64>,
    pub recommendation: Vec<f64>,
    pub achieved_similarity: f64,
    pub expected_profit: f64,
    /// Expected profit of showing the customer's own ratings, same model.
    pub baseline_profit: f64,
    pub gain_ratio: f64,
    pub gain_lower_bound: f64,
    pub gain_lower_bound_weak: f64,
    pub lambda: Option<f64>,
    pub cap_violations: Vec<String>,
    pub negative_entries: Vec<String>,
    pub clamped: Option<ClampedReport>,
    pub search: Option<SearchReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClampedReport {
    pub recommendation: Vec<f64>,
    pub similarity: f64,
    pub expected_profit: f64,
    pub gain_ratio: f64,
    pub meets_threshold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub steps: usize,
    pub step_bound: usize,
    pub lower: f64,
    pub upper: f64,
}

impl Report {
    pub(crate) fn assemble(
        records: &[CatalogRecord],
        cfg: &RunConfig,
        solved: SolveReport64,
        bounds: (f64, f64),
    ) -> Self {
        let ids = |idx: &[usize]| idx.iter().map(|&i| records[i].item_id.clone()).collect();
        Self {
            schema_version: SCHEMA_VERSION,
            model: cfg.model.name(),
            measure: cfg.measure.name(),
            decision_rule: solved.search.as_ref().map(|_| cfg.decision.name()),
            tau: cfg.tau,
            max_rating: cfg.max_rating,
            epsilon: cfg.epsilon,
            clamp: cfg.clamp,
            seed: cfg.seed,
            item_ids: records.iter().map(|r| r.item_id.clone()).collect(),
            ratings: records.iter().map(|r| r.rating).collect(),
            profits: records.iter().map(|r| r.profit).collect(),
            cap_violations: ids(&solved.cap_violations),
            negative_entries: ids(&solved.negative_entries),
            recommendation: solved.recommendation.into_values(),
            achieved_similarity: solved.achieved_similarity,
            expected_profit: solved.expected_profit,
            baseline_profit: solved.baseline_profit,
            gain_ratio: solved.gain_ratio,
            gain_lower_bound: bounds.0,
            gain_lower_bound_weak: bounds.1,
            lambda: solved.lambda,
            clamped: solved.clamped.map(|c| ClampedReport {
                recommendation: c.recommendation.into_values(),
                similarity: c.similarity,
                expected_profit: c.expected_profit,
                gain_ratio: c.gain_ratio,
                meets_threshold: c.meets_threshold,
            }),
            search: solved.search.map(|s| SearchReport {
                steps: s.steps,
                step_bound: s.step_bound,
                lower: s.lower,
                upper: s.upper,
            }),
        }
    }
}

/// Pretty JSON with a trailing newline: one object for one report, an array
/// otherwise.
pub fn render(reports: &[Report]) -> String {
    let mut out = match reports {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("reports serialize");
    out.push('\n');
    out
}
