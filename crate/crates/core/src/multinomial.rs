//! Single-purchase model: the customer buys exactly one item, item `i` with
//! probability `r_i / Σ r_j`.
//!
//! The Lagrange system for this objective couples every coordinate, so the
//! solver works through the decision question "is there an `r` in the trust
//! ball with `E_p(r) >= V`?". Because `E_p(r) >= V` iff `Σ (p_i - V) r_i >= 0`,
//! each question is a linear maximization over the ball, solved in closed form
//! by shifting profits by `V`. A binary search over `V ∈ [0, V_max]` then
//! approaches the optimum.
//!
//! Two decision rules are available:
//!
//! * [`DecisionRule::ClosedForm`] ([`decide`]) takes the unconstrained
//!   maximizer `r_i = (p_i - V)/(2λ) + c_i/τ` and answers "no" whenever it has
//!   a negative entry, even if some other nonnegative point of the ball would
//!   reach `V`.
//! * [`DecisionRule::Nonnegative`] ([`decide_nonnegative`]) maximizes
//!   `Σ (p_i - V) r_i` over the ball intersected with `r >= 0`. The maximizer
//!   is `r_i = max(0, c_i/τ + t (p_i - V))` for the `t` that puts it on the
//!   sphere, found exactly by walking the clipping breakpoints. It agrees with
//!   the closed form whenever the latter has no negative entry, and its answer
//!   is monotone in `V`.
//!
//! The search keeps the best witness it has seen instead of trusting
//! monotonicity in `V`, since the closed-form rule does not have it.

use crate::error::{Error, Result};
use crate::model::PurchaseModel;
use crate::report::{clamp_solution, gain, CapMode, SearchSummary, SolveReport};
use crate::scalar::{self, Scalar};
use crate::similarity::{SphereRegion, TrustConstraint};
use crate::vector::{ProfitVector, RatingVector};

/// `Σ p_i r_i / Σ r_j`.
pub fn expected_profit_multinomial<T: Scalar>(
    p: &ProfitVector<T>,
    r: &RatingVector<T>,
) -> Result<T> {
    r.check_len(p.len())?;
    let total = r.sum();
    if total == T::zero() {
        return Err(Error::ZeroRecommendation);
    }
    Ok(scalar::dot(p.values(), r.values()) / total)
}

/// Answer to one decision question.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionOutcome<T> {
    pub feasible: bool,
    /// Present iff `feasible`.
    pub witness: Option<RatingVector<T>>,
    pub value_tested: T,
    /// Multiplier of the shifted problem; `None` when it is undefined (the
    /// ball is a point, or every profit equals `V`).
    pub lambda: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecisionRule {
    /// Shifted closed-form point; "no" if any entry is negative.
    ClosedForm,
    /// Exact maximization over the ball restricted to `r >= 0`.
    #[default]
    Nonnegative,
}

impl DecisionRule {
    pub fn name(self) -> &'static str {
        match self {
            Self::ClosedForm => "closed-form",
            Self::Nonnegative => "nonnegative",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig<T> {
    epsilon: T,
    max_steps: usize,
    rule: DecisionRule,
}

impl<T: Scalar> SearchConfig<T> {
    pub const DEFAULT_MAX_STEPS: usize = 200;

    /// `epsilon` is an absolute tolerance on expected profit.
    pub fn new(epsilon: T) -> Result<Self> {
        Self::with_max_steps(epsilon, Self::DEFAULT_MAX_STEPS)
    }

    pub fn with_max_steps(epsilon: T, max_steps: usize) -> Result<Self> {
        if !(epsilon > T::zero() && epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        Ok(Self {
            epsilon,
            max_steps,
            rule: DecisionRule::default(),
        })
    }

    pub fn with_rule(mut self, rule: DecisionRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn rule(&self) -> DecisionRule {
        self.rule
    }

    /// Tolerance `delta · V_max`.
    pub fn relative(p: &ProfitVector<T>, delta: T) -> Result<Self> {
        Self::new(delta * p.max())
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    /// Halvings needed to shrink `[0, v_max]` to width `epsilon`.
    pub fn step_bound(&self, v_max: T) -> usize {
        let ratio = (v_max / self.epsilon).as_f64();
        if ratio <= 1.0 {
            0
        } else {
            ratio.log2().ceil() as usize
        }
    }
}

/// Is there an `r` with `dice(c, r) >= tau` and `E_p(r) >= v`? Closed-form
/// rule; see the module docs for its blind spot.
pub fn decide<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    tau: T,
    v: T,
) -> Result<DecisionOutcome<T>> {
    decide_with(c, p, &TrustConstraint::dice(tau)?, v)
}

pub fn decide_with<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    constraint: &TrustConstraint<T>,
    v: T,
) -> Result<DecisionOutcome<T>> {
    c.check_len(p.len())?;
    let sphere = constraint.sphere(c)?;
    decide_on_sphere(c, p, &sphere, v)
}

/// Same question as [`decide`], answered exactly over nonnegative ratings.
pub fn decide_nonnegative<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    tau: T,
    v: T,
) -> Result<DecisionOutcome<T>> {
    decide_rule_with(
        c,
        p,
        &TrustConstraint::dice(tau)?,
        v,
        DecisionRule::Nonnegative,
    )
}

pub fn decide_rule_with<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    constraint: &TrustConstraint<T>,
    v: T,
    rule: DecisionRule,
) -> Result<DecisionOutcome<T>> {
    c.check_len(p.len())?;
    let sphere = constraint.sphere(c)?;
    decide_by_rule(c, p, &sphere, v, rule)
}

fn decide_by_rule<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    sphere: &SphereRegion<T>,
    v: T,
    rule: DecisionRule,
) -> Result<DecisionOutcome<T>> {
    match rule {
        DecisionRule::ClosedForm => decide_on_sphere(c, p, sphere, v),
        DecisionRule::Nonnegative => decide_nonnegative_on_sphere(c, p, sphere, v),
    }
}

/// Every item earns exactly `v`, so any feasible `r` reaches it.
fn flat_outcome<T: Scalar>(c: &RatingVector<T>, v: T) -> DecisionOutcome<T> {
    DecisionOutcome {
        feasible: true,
        witness: Some(c.clone()),
        value_tested: v,
        lambda: None,
    }
}

pub(crate) fn decide_on_sphere<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    sphere: &SphereRegion<T>,
    v: T,
) -> Result<DecisionOutcome<T>> {
    let shifted: Vec<T> = p.values().iter().map(|&pi| pi - v).collect();
    let shifted_sq = scalar::norm_sq(&shifted);

    if shifted_sq == T::zero() {
        return Ok(flat_outcome(c, v));
    }

    let (candidate, lambda) = if sphere.radius_squared == T::zero() {
        (sphere.center.clone(), None)
    } else {
        let step = (sphere.radius_squared / shifted_sq).sqrt();
        let r = shifted
            .iter()
            .zip(&sphere.center)
            .map(|(&d, &ci)| d * step + ci)
            .collect();
        (
            r,
            Some((shifted_sq / sphere.radius_squared).sqrt() / T::lit(2.0)),
        )
    };

    let nonnegative = candidate.iter().all(|&x| x >= T::zero());
    let reaches = scalar::dot(&shifted, &candidate) >= T::zero();
    let feasible = nonnegative && reaches;
    let witness = if feasible {
        Some(RatingVector::unbounded(candidate, c.max_rating())?)
    } else {
        None
    };
    Ok(DecisionOutcome {
        feasible,
        witness,
        value_tested: v,
        lambda,
    })
}

fn decide_nonnegative_on_sphere<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    sphere: &SphereRegion<T>,
    v: T,
) -> Result<DecisionOutcome<T>> {
    let shifted: Vec<T> = p.values().iter().map(|&pi| pi - v).collect();
    if shifted.iter().all(|&d| d == T::zero()) {
        return Ok(flat_outcome(c, v));
    }
    let center = &sphere.center;

    let (candidate, lambda) = if sphere.radius_squared == T::zero() {
        (center.clone(), None)
    } else {
        match clip_step(center, &shifted, sphere.radius_squared) {
            Some(t) => {
                let r = center
                    .iter()
                    .zip(&shifted)
                    .map(|(&o, &d)| (o + t * d).max(T::zero()))
                    .collect();
                (r, Some(T::one() / (t + t)))
            }
            // No profitable direction reaches the sphere: zero out every
            // losing item and keep the rest at the center.
            None => {
                let r = center
                    .iter()
                    .zip(&shifted)
                    .map(|(&o, &d)| if d < T::zero() { T::zero() } else { o })
                    .collect();
                (r, None)
            }
        }
    };

    let total: T = candidate.iter().copied().sum();
    let feasible = total > T::zero() && scalar::dot(&shifted, &candidate) >= T::zero();
    let witness = if feasible {
        Some(RatingVector::unbounded(candidate, c.max_rating())?)
    } else {
        None
    };
    Ok(DecisionOutcome {
        feasible,
        witness,
        value_tested: v,
        lambda,
    })
}

/// Step `t > 0` with `Σ (max(0, o_i + t d_i) - o_i)² = radius_squared`, or
/// `None` when the left side stays below it for every `t`.
///
/// The left side is `A t² + B` between consecutive clipping breakpoints
/// `o_i / -d_i` (for `d_i < 0`), with `A` summing `d_i²` over unclipped
/// coordinates and `B` summing `o_i²` over clipped ones.
fn clip_step<T: Scalar>(center: &[T], dir: &[T], radius_squared: T) -> Option<T> {
    let mut active = T::zero();
    let mut clipped = T::zero();
    let mut breaks: Vec<(T, usize)> = Vec::new();
    for (i, (&o, &d)) in center.iter().zip(dir).enumerate() {
        if d > T::zero() {
            active = active + d * d;
        } else if d < T::zero() {
            if o > T::zero() {
                active = active + d * d;
                breaks.push((o / -d, i));
            } else {
                clipped = clipped + o * o;
            }
        }
    }
    breaks.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite breakpoints"));

    for (t_break, i) in breaks {
        if active * t_break * t_break + clipped >= radius_squared {
            break;
        }
        let (o, d) = (center[i], dir[i]);
        active = active - d * d;
        clipped = clipped + o * o;
    }
    if active <= T::zero() {
        return None;
    }
    Some(((radius_squared - clipped).max(T::zero()) / active).sqrt())
}

/// Near-optimal recommendation for the single-purchase model under
/// `dice(c, r) >= tau`.
pub fn solve_multinomial<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    tau: T,
    cfg: &SearchConfig<T>,
) -> Result<SolveReport<T>> {
    solve_multinomial_with(c, p, &TrustConstraint::dice(tau)?, cfg, CapMode::Raw)
}

pub fn solve_multinomial_with<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    constraint: &TrustConstraint<T>,
    cfg: &SearchConfig<T>,
    cap: CapMode,
) -> Result<SolveReport<T>> {
    c.check_len(p.len())?;
    let sphere = constraint.sphere(c)?;
    let v_max = p.max();

    let first = decide_by_rule(c, p, &sphere, T::zero(), cfg.rule)?;
    let Some(mut best) = first.witness else {
        return Err(Error::NoFeasibleWitness);
    };
    let mut best_profit = expected_profit_multinomial(p, &best)?;
    let mut best_lambda = first.lambda;

    let mut lower = T::zero();
    let mut upper = v_max;
    let mut history = vec![best_profit];
    let mut steps = 0;
    while upper - lower > cfg.epsilon && steps < cfg.max_steps {
        let mid = lower + (upper - lower) / T::lit(2.0);
        let outcome = decide_by_rule(c, p, &sphere, mid, cfg.rule)?;
        match outcome.witness {
            Some(w) => {
                lower = mid;
                let profit = expected_profit_multinomial(p, &w)?;
                if profit > best_profit {
                    best_profit = profit;
                    best = w;
                    best_lambda = outcome.lambda;
                }
            }
            None => upper = mid,
        }
        steps += 1;
        history.push(best_profit);
    }

    let baseline_profit = expected_profit_multinomial(p, c)?;
    let clamped = match cap {
        CapMode::Raw => None,
        CapMode::Clamp => Some(clamp_solution(
            c,
            p,
            constraint,
            PurchaseModel::Multinomial,
            &best,
            baseline_profit,
        )?),
    };

    Ok(SolveReport {
        achieved_similarity: constraint.similarity(c, &best)?,
        expected_profit: best_profit,
        gain_ratio: gain(best_profit, baseline_profit),
        baseline_profit,
        lambda: best_lambda,
        cap_violations: best.cap_violations(),
        negative_entries: best.negative_entries(),
        recommendation: best,
        clamped,
        search: Some(SearchSummary {
            steps,
            step_bound: cfg.step_bound(v_max),
            lower,
            upper,
            best_profit_by_step: history,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::dice;

    fn rv(v: &[f64]) -> RatingVector<f64> {
        RatingVector::new(v.to_vec(), 5.0).unwrap()
    }

    fn pv(v: &[f64]) -> ProfitVector<f64> {
        ProfitVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn expected_profit_examples() {
        let p = pv(&[1.0, 3.0]);
        assert_eq!(
            expected_profit_multinomial(&p, &rv(&[1.0, 1.0])).unwrap(),
            2.0
        );
        assert!(
            (expected_profit_multinomial(&p, &rv(&[4.0, 2.0])).unwrap() - 5.0 / 3.0).abs() < 1e-15
        );
        let flat = pv(&[2.5; 4]);
        assert_eq!(
            expected_profit_multinomial(&flat, &rv(&[0.3, 4.0, 1.0, 0.0])).unwrap(),
            2.5
        );
        assert_eq!(
            expected_profit_multinomial(&p, &rv(&[0.0, 0.0])),
            Err(Error::ZeroRecommendation)
        );
    }

    #[test]
    fn decide_trivial_thresholds() {
        let c = rv(&[4.0, 2.0, 1.0]);
        let p = pv(&[1.0, 3.0, 2.0]);
        let yes = decide(&c, &p, 0.9, 0.0).unwrap();
        assert!(yes.feasible);
        let w = yes.witness.unwrap();
        assert!(w.values().iter().all(|&x| x >= 0.0));
        assert!(dice(&c, &w).unwrap() >= 0.9 - 1e-9);

        let no = decide(&c, &p, 0.9, 4.0).unwrap();
        assert!(!no.feasible);
        assert!(no.witness.is_none());
    }

    #[test]
    fn decide_beats_baseline_on_two_item_example() {
        let c = rv(&[4.0, 2.0]);
        let p = pv(&[1.0, 3.0]);
        let out = decide(&c, &p, 0.9, 5.0 / 3.0).unwrap();
        assert!(out.feasible);
        let w = out.witness.unwrap();
        assert!(expected_profit_multinomial(&p, &w).unwrap() > 5.0 / 3.0);
    }

    #[test]
    fn decide_witness_is_stationary() {
        let c = rv(&[4.0, 2.0, 3.0]);
        let p = pv(&[1.0, 3.0, 2.0]);
        let (tau, v) = (0.85, 1.7);
        let out = decide(&c, &p, tau, v).unwrap();
        let w = out.witness.unwrap();
        let lambda = out.lambda.unwrap();
        for i in 0..3 {
            let lhs = p.values()[i] - v;
            let rhs = 2.0 * lambda * (w.values()[i] - c.values()[i] / tau);
            assert!((lhs - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn decide_all_profits_equal_value() {
        let c = rv(&[4.0, 2.0]);
        let out = decide(&c, &pv(&[2.0, 2.0]), 0.9, 2.0).unwrap();
        assert!(out.feasible);
        assert_eq!(out.witness.unwrap(), c);
        assert_eq!(out.lambda, None);
    }

    #[test]
    fn tau_one_returns_customer_ratings() {
        let c = rv(&[4.0, 2.0, 1.0]);
        let p = pv(&[1.0, 3.0, 2.0]);
        let cfg = SearchConfig::new(1e-6).unwrap();
        let rep = solve_multinomial(&c, &p, 1.0, &cfg).unwrap();
        assert_eq!(rep.recommendation, c);
        assert_eq!(
            rep.expected_profit,
            expected_profit_multinomial(&p, &c).unwrap()
        );
        assert_eq!(rep.gain_ratio, 0.0);
    }

    #[test]
    fn flat_profits_give_flat_expectation() {
        let c = rv(&[4.0, 2.0, 1.0]);
        let p = pv(&[2.0; 3]);
        let rep = solve_multinomial(&c, &p, 0.8, &SearchConfig::new(1e-6).unwrap()).unwrap();
        assert!((rep.expected_profit - 2.0).abs() < 1e-12);
    }

    #[test]
    fn search_respects_step_bound_and_improves() {
        let c = rv(&[4.0, 2.0]);
        let p = pv(&[1.0, 3.0]);
        let cfg = SearchConfig::new(1e-6).unwrap();
        let rep = solve_multinomial(&c, &p, 0.9, &cfg).unwrap();
        let s = rep.search.as_ref().unwrap();
        assert_eq!(s.step_bound, 22); // ceil(log2(3e6))
        assert!(s.steps <= s.step_bound);
        assert!(s.upper - s.lower <= 1e-6);
        assert!(s.best_profit_by_step.windows(2).all(|w| w[0] <= w[1]));
        assert!(rep.expected_profit > rep.baseline_profit);
        assert!((rep.achieved_similarity - 0.9).abs() < 1e-9);
    }

    #[test]
    fn max_steps_caps_the_search() {
        let c = rv(&[4.0, 2.0]);
        let p = pv(&[1.0, 3.0]);
        let cfg = SearchConfig::with_max_steps(1e-12, 5).unwrap();
        let rep = solve_multinomial(&c, &p, 0.9, &cfg).unwrap();
        assert_eq!(rep.search.unwrap().steps, 5);
    }

    #[test]
    fn nonnegative_rule_matches_closed_form_when_no_clipping() {
        let c = rv(&[4.0, 2.0, 3.0]);
        let p = pv(&[1.0, 3.0, 2.0]);
        let a = decide(&c, &p, 0.9, 1.8).unwrap();
        let b = decide_nonnegative(&c, &p, 0.9, 1.8).unwrap();
        assert!(a.feasible && b.feasible);
        let (wa, wb) = (a.witness.unwrap(), b.witness.unwrap());
        for (x, y) in wa.values().iter().zip(wb.values()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((a.lambda.unwrap() - b.lambda.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn nonnegative_rule_clips_onto_the_face() {
        // Ball reaches r_0 = 0 (1 <= 0.19·26), so E_p can get arbitrarily close
        // to V_max = 3 while the closed form already fails at 2.99.
        let c = rv(&[1.0, 5.0]);
        let p = pv(&[1.0, 3.0]);
        let v = 2.99;
        assert!(!decide(&c, &p, 0.9, v).unwrap().feasible);
        let out = decide_nonnegative(&c, &p, 0.9, v).unwrap();
        assert!(out.feasible);
        let w = out.witness.unwrap();
        assert_eq!(w.values()[0], 0.0);
        assert!((dice(&c, &w).unwrap() - 0.9).abs() < 1e-9);
        assert!(expected_profit_multinomial(&p, &w).unwrap() >= v);
    }

    #[test]
    fn nonnegative_rule_is_monotone() {
        let c = rv(&[1.0, 5.0, 2.5]);
        let p = pv(&[1.0, 3.0, 2.0]);
        let mut last = true;
        for k in 0..=300 {
            let v = 3.0 * k as f64 / 300.0;
            let f = decide_nonnegative(&c, &p, 0.8, v).unwrap().feasible;
            assert!(last || !f, "feasible again at v = {v}");
            last = f;
        }
    }

    #[test]
    fn rule_choice_changes_search_result() {
        // Optimum has r_2 = 0; the closed-form rule stalls well below it.
        let c = rv(&[2.3, 4.25, 1.2]);
        let p = pv(&[6.9, 6.5, 2.2]);
        let cfg = SearchConfig::new(1e-6).unwrap();
        let exact = solve_multinomial(&c, &p, 0.5, &cfg).unwrap();
        let closed =
            solve_multinomial(&c, &p, 0.5, &cfg.with_rule(DecisionRule::ClosedForm)).unwrap();
        assert!(
            exact.expected_profit > closed.expected_profit + 1e-2,
            "{} vs {}",
            exact.expected_profit,
            closed.expected_profit
        );
        assert_eq!(exact.recommendation.values()[2], 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(0.0f64).is_err());
        assert!(SearchConfig::new(f64::INFINITY).is_err());
        let cfg = SearchConfig::relative(&pv(&[1.0, 4.0]), 1e-3).unwrap();
        assert!((cfg.epsilon() - 4e-3).abs() < 1e-15);
        assert_eq!(cfg.step_bound(4.0), 10);
        assert_eq!(SearchConfig::new(10.0).unwrap().step_bound(4.0), 0);
    }
}
