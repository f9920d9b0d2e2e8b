//! Closed-form profit maximizer for the independent-purchase model, where
//! item `i` is bought with probability `r_i / m`.
//!
//! Expected profit `(1/m) Σ p_i r_i` has the constant gradient `p / m`, which
//! never vanishes for positive profits, so the optimum sits on the boundary of
//! the trust ball. There the Lagrange conditions `p_i / m = 2λ(r_i - c_i/τ)`
//! give
//!
//! ```text
//! r_i = p_i · sqrt((1/τ² - 1) Σ c_j² / Σ p_j²) + c_i / τ
//! λ   = (1 / 2m) · sqrt(Σ p_i² / ((1/τ² - 1) Σ c_i²))
//! ```
//!
//! and the relative gain over showing `c` is at least
//! `sqrt(1/τ² - 1) + 1/τ - 1`, with equality exactly when `p ∝ c`.

use crate::error::Result;
use crate::model::PurchaseModel;
use crate::report::{clamp_solution, gain, CapMode, SolveReport};
use crate::scalar::{self, Scalar};
use crate::similarity::{check_tau, TrustConstraint};
use crate::vector::{ProfitVector, RatingVector};

/// `(1/m) Σ p_i r_i`, with `m` the rating scale of `r`.
///
/// Entries above `m` are not rejected: for an unclamped solver output this is
/// the algebraic quantity rather than a realizable expectation.
pub fn expected_profit_linear<T: Scalar>(p: &ProfitVector<T>, r: &RatingVector<T>) -> Result<T> {
    r.check_len(p.len())?;
    Ok(scalar::dot(p.values(), r.values()) / r.max_rating())
}

/// Maximizes linear-model profit subject to `dice(c, r) >= tau`.
pub fn solve_linear<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    tau: T,
) -> Result<SolveReport<T>> {
    solve_linear_with(c, p, &TrustConstraint::dice(tau)?, CapMode::Raw)
}

/// Same as [`solve_linear`], for any constraint with a sphere form.
pub fn solve_linear_with<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    constraint: &TrustConstraint<T>,
    cap: CapMode,
) -> Result<SolveReport<T>> {
    c.check_len(p.len())?;
    let sphere = constraint.sphere(c)?;
    let m = c.max_rating();

    let (recommendation, lambda) = if sphere.radius_squared == T::zero() {
        // Feasible set is the single point c.
        (c.clone(), None)
    } else {
        let pp = p.norm_sq();
        let step = (sphere.radius_squared / pp).sqrt();
        let values = p
            .values()
            .iter()
            .zip(&sphere.center)
            .map(|(&pi, &ci)| pi * step + ci)
            .collect();
        let lambda = (pp / sphere.radius_squared).sqrt() / (m + m);
        (RatingVector::unbounded(values, m)?, Some(lambda))
    };

    let baseline_profit = expected_profit_linear(p, c)?;
    let expected_profit = expected_profit_linear(p, &recommendation)?;
    let clamped = match cap {
        CapMode::Raw => None,
        CapMode::Clamp => Some(clamp_solution(
            c,
            p,
            constraint,
            PurchaseModel::Linear,
            &recommendation,
            baseline_profit,
        )?),
    };

    Ok(SolveReport {
        achieved_similarity: constraint.similarity(c, &recommendation)?,
        gain_ratio: gain(expected_profit, baseline_profit),
        cap_violations: recommendation.cap_violations(),
        negative_entries: recommendation.negative_entries(),
        recommendation,
        expected_profit,
        baseline_profit,
        lambda,
        clamped,
        search: None,
    })
}

/// Guaranteed relative gain of the linear solution at Dice threshold `tau`:
/// `sqrt(1/τ² - 1) + 1/τ - 1`.
pub fn gain_lower_bound<T: Scalar>(tau: T) -> Result<T> {
    check_tau(tau)?;
    let inv = T::one() / tau;
    Ok((inv * inv - T::one()).max(T::zero()).sqrt() + inv - T::one())
}

/// The looser bound `2(1/τ - 1)`, which never exceeds [`gain_lower_bound`].
pub fn weak_gain_bound<T: Scalar>(tau: T) -> Result<T> {
    check_tau(tau)?;
    Ok(T::lit(2.0) * (T::one() / tau - T::one()))
}
