//! Profit-aware recommendation under a trust constraint.
//!
//! Given a customer's true ratings `c` and per-item profits `p`, find the
//! recommendation `r` that maximizes the vendor's expected profit while
//! keeping a similarity measure `T(c, r)` at or above a threshold `tau`.
//!
//! * [`similarity`]: Dice, Jaccard, cosine and 1 − MSE, plus the balls that
//!   Dice and Jaccard thresholds define.
//! * [`linear`]: closed-form optimum when each item is bought independently
//!   with probability `r_i / m`.
//! * [`multinomial`]: binary search over a decision problem when exactly one
//!   item is bought with probability `r_i / Σ r_j`.
//! * [`oracle`]: brute-force and Monte Carlo checks, independent of the
//!   solvers.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases
//! below fix the usual double-precision case.
//!
//! ```
//! use trustrec::{solve_linear, ProfitVector, RatingVector};
//!
//! let c = RatingVector::new(vec![4.0f64, 2.0], 5.0)?;
//! let p = ProfitVector::new(vec![1.0, 3.0])?;
//! let report = solve_linear(&c, &p, 0.9)?;
//! assert!((report.achieved_similarity - 0.9).abs() < 1e-9);
//! assert!(report.gain_ratio > 0.22);
//! # Ok::<(), trustrec::Error>(())
//! ```

pub mod error;
pub mod linear;
pub mod model;
pub mod multinomial;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod similarity;
pub mod vector;

pub use error::{Error, Result};
pub use linear::{
    expected_profit_linear, gain_lower_bound, solve_linear, solve_linear_with, weak_gain_bound,
};
pub use model::PurchaseModel;
pub use multinomial::{
    decide, decide_nonnegative, decide_rule_with, decide_with, expected_profit_multinomial,
    solve_multinomial, solve_multinomial_with, DecisionOutcome, DecisionRule, SearchConfig,
};
pub use report::{CapMode, ClampedSolution, SearchSummary, SolveReport};
pub use scalar::Scalar;
pub use similarity::{
    cosine, dice, dice_sphere, jaccard, jaccard_sphere, one_minus_mse, SimilarityMeasure,
    SphereRegion, TrustConstraint,
};
pub use vector::{ProfitVector, RatingVector};

pub type RatingVector64 = RatingVector<f64>;
pub type RatingVector32 = RatingVector<f32>;
pub type ProfitVector64 = ProfitVector<f64>;
pub type ProfitVector32 = ProfitVector<f32>;
pub type SphereRegion64 = SphereRegion<f64>;
pub type TrustConstraint64 = TrustConstraint<f64>;
pub type SolveReport64 = SolveReport<f64>;
pub type SolveReport32 = SolveReport<f32>;
pub type SearchConfig64 = SearchConfig<f64>;
pub type DecisionOutcome64 = DecisionOutcome<f64>;
