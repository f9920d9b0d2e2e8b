use crate::error::Result;
use crate::model::PurchaseModel;
use crate::scalar::Scalar;
use crate::similarity::TrustConstraint;
use crate::vector::{ProfitVector, RatingVector};

/// What to do with solver entries that leave the rating scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CapMode {
    /// Report the closed-form point as is, flagging out-of-scale entries.
    #[default]
    Raw,
    /// Additionally project onto `[0, m]` and re-evaluate the projection.
    Clamp,
}

/// Outcome of a solve, always describing the unclamped optimum first.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<T> {
    pub recommendation: RatingVector<T>,
    pub achieved_similarity: T,
    pub expected_profit: T,
    /// Expected profit of showing the customer's own ratings.
    pub baseline_profit: T,
    /// `(expected_profit - baseline_profit) / baseline_profit`.
    pub gain_ratio: T,
    /// Lagrange multiplier of the surface optimum; `None` when the feasible
    /// set is the single point `c`.
    pub lambda: Option<T>,
    /// Indices where the recommendation exceeds the maximum rating.
    pub cap_violations: Vec<usize>,
    pub negative_entries: Vec<usize>,
    pub clamped: Option<ClampedSolution<T>>,
    /// Binary search bookkeeping, multinomial solver only.
    pub search: Option<SearchSummary<T>>,
}

/// The recommendation projected onto `[0, m]`, re-evaluated. The projection
/// may violate the trust threshold; `meets_threshold` says whether it does.
#[derive(Debug, Clone, PartialEq)]
pub struct ClampedSolution<T> {
    pub recommendation: RatingVector<T>,
    pub similarity: T,
    pub expected_profit: T,
    pub gain_ratio: T,
    pub meets_threshold: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSummary<T> {
    pub steps: usize,
    /// `ceil(log2(V_max / epsilon))`.
    pub step_bound: usize,
    pub lower: T,
    pub upper: T,
    /// Best expected profit held after each step; index 0 is before the first
    /// halving.
    pub best_profit_by_step: Vec<T>,
}

pub(crate) fn gain<T: Scalar>(profit: T, baseline: T) -> T {
    (profit - baseline) / baseline
}

pub(crate) fn clamp_solution<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    constraint: &TrustConstraint<T>,
    model: PurchaseModel,
    raw: &RatingVector<T>,
    baseline: T,
) -> Result<ClampedSolution<T>> {
    let recommendation = raw.clamped();
    let similarity = constraint.similarity(c, &recommendation)?;
    let expected_profit = model.expected_profit(p, &recommendation)?;
    Ok(ClampedSolution {
        meets_threshold: similarity >= constraint.tau() - T::BOUNDARY_TOL,
        gain_ratio: gain(expected_profit, baseline),
        recommendation,
        similarity,
        expected_profit,
    })
}
