//! Dispatch from a validated catalog to the solvers.

use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;
use trustrec::{
    gain_lower_bound, solve_linear_with, solve_multinomial_with, weak_gain_bound, CapMode,
    DecisionRule, ProfitVector, PurchaseModel, RatingVector, SearchConfig, SimilarityMeasure,
    TrustConstraint,
};

use crate::ingest::{self, CatalogRecord, Format, IngestError};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tau: f64,
    pub measure: SimilarityMeasure,
    pub model: PurchaseModel,
    pub max_rating: f64,
    /// Absolute tolerance of the multinomial binary search.
    pub epsilon: f64,
    pub clamp: bool,
    /// Recorded in the report; the solvers themselves draw no randomness.
    pub seed: u64,
    pub decision: DecisionRule,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tau: 0.9,
            measure: SimilarityMeasure::Dice,
            model: PurchaseModel::Linear,
            max_rating: 5.0,
            epsilon: 1e-6,
            clamp: false,
            seed: 0,
            decision: DecisionRule::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Ingest {
        path: PathBuf,
        #[source]
        source: IngestError,
    },
    #[error("{context}solver failed: {source}")]
    Solver {
        context: String,
        #[source]
        source: trustrec::Error,
    },
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), RunError> {
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return Err(RunError::Config(format!(
                "tau must lie in (0, 1], got {}",
                self.tau
            )));
        }
        if !(self.max_rating.is_finite() && self.max_rating > 0.0) {
            return Err(RunError::Config(format!(
                "max rating must be positive, got {}",
                self.max_rating
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(RunError::Config(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !matches!(
            self.measure,
            SimilarityMeasure::Dice | SimilarityMeasure::Jaccard
        ) {
            return Err(RunError::Config(format!(
                "measure {} has no solver",
                self.measure.name()
            )));
        }
        Ok(())
    }
}

/// Solves one customer.
pub fn run(records: &[CatalogRecord], cfg: &RunConfig) -> Result<Report, RunError> {
    cfg.validate()?;
    let solver = |source| RunError::Solver {
        context: String::new(),
        source,
    };
    let c = RatingVector::new(records.iter().map(|r| r.rating).collect(), cfg.max_rating)
        .map_err(solver)?;
    let p = ProfitVector::new(records.iter().map(|r| r.profit).collect()).map_err(solver)?;
    let constraint = TrustConstraint::new(cfg.measure, cfg.tau).map_err(solver)?;
    let cap = if cfg.clamp {
        CapMode::Clamp
    } else {
        CapMode::Raw
    };

    let solved = match cfg.model {
        PurchaseModel::Linear => solve_linear_with(&c, &p, &constraint, cap),
        PurchaseModel::Multinomial => SearchConfig::new(cfg.epsilon)
            .map(|s| s.with_rule(cfg.decision))
            .and_then(|s| solve_multinomial_with(&c, &p, &constraint, &s, cap)),
    }
    .map_err(solver)?;

    // The ball for any supported measure is a Dice ball at this threshold.
    let dice_tau = constraint.dice_equivalent_tau().map_err(solver)?;
    let bounds = (
        gain_lower_bound(dice_tau).map_err(solver)?,
        weak_gain_bound(dice_tau).map_err(solver)?,
    );
    Ok(Report::assemble(records, cfg, solved, bounds))
}

/// Ingests and solves each file in parallel. Reports come back in input
/// order; the first failure in input order wins.
pub fn solve_files(
    paths: &[PathBuf],
    format: Format,
    cfg: &RunConfig,
) -> Result<Vec<Report>, RunError> {
    cfg.validate()?;
    paths
        .par_iter()
        .map(|path| {
            let records = ingest::ingest(path, format, cfg.max_rating).map_err(|source| {
                RunError::Ingest {
                    path: path.clone(),
                    source,
                }
            })?;
            run(&records, cfg).map_err(|e| match e {
                RunError::Solver { source, .. } => RunError::Solver {
                    context: format!("{}: ", path.display()),
                    source,
                },
                other => other,
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}
