//! Purchase models: how displayed ratings turn into purchase probabilities.

use crate::error::Result;
use crate::linear::expected_profit_linear;
use crate::multinomial::expected_profit_multinomial;
use crate::scalar::Scalar;
use crate::vector::{ProfitVector, RatingVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PurchaseModel {
    /// Each item is bought independently with probability `r_i / m`.
    Linear,
    /// Exactly one item is bought, item `i` with probability `r_i / Σ r_j`.
    Multinomial,
}

impl PurchaseModel {
    pub fn expected_profit<T: Scalar>(self, p: &ProfitVector<T>, r: &RatingVector<T>) -> Result<T> {
        match self {
            Self::Linear => expected_profit_linear(p, r),
            Self::Multinomial => expected_profit_multinomial(p, r),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::Multinomial => "multinomial",
        }
    }
}
