use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::PurchaseModel;
use crate::scalar::Scalar;
use crate::vector::{ProfitVector, RatingVector};

/// Generator behind [`simulate_profit`], recorded in every estimate.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng(seed_from_u64)";

#[derive(Debug, Clone, PartialEq)]
pub struct SimEstimate<T> {
    pub mean_profit: T,
    /// Sample standard deviation over `sqrt(trials)`; zero for one trial.
    pub std_error: T,
    pub trials: u64,
    pub seed: u64,
    pub rng: &'static str,
}

impl<T: Scalar> SimEstimate<T> {
    /// `|mean - expected| <= k · std_error`, plus rounding slack so that a
    /// zero-variance estimate still matches its expectation.
    pub fn agrees_with(&self, expected: T, k: T) -> bool {
        let slack = T::BOUNDARY_TOL * (T::one() + expected.abs());
        (self.mean_profit - expected).abs() <= k * self.std_error + slack
    }
}

/// Monte Carlo estimate of the profit earned per customer visit when `r` is
/// displayed. Reproducible: the same inputs and seed give a bit-identical
/// estimate.
pub fn simulate_profit<T: Scalar>(
    p: &ProfitVector<T>,
    r: &RatingVector<T>,
    model: PurchaseModel,
    trials: u64,
    seed: u64,
) -> Result<SimEstimate<T>> {
    r.check_len(p.len())?;
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let m = r.max_rating();
    for (index, &x) in r.values().iter().enumerate() {
        let bad = x < T::zero() || (model == PurchaseModel::Linear && x > m);
        if bad {
            return Err(Error::InvalidProbability {
                index,
                value: x.as_f64(),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profits = p.values();
    let mut acc = Welford::new();

    match model {
        PurchaseModel::Linear => {
            let probs: Vec<f64> = r.values().iter().map(|&x| (x / m).as_f64()).collect();
            for _ in 0..trials {
                let mut earned = T::zero();
                for (&q, &pi) in probs.iter().zip(profits) {
                    if rng.random::<f64>() < q {
                        earned = earned + pi;
                    }
                }
                acc.push(earned);
            }
        }
        PurchaseModel::Multinomial => {
            let total = r.sum();
            if total == T::zero() {
                return Err(Error::ZeroRecommendation);
            }
            let mut cumulative = Vec::with_capacity(r.len());
            let mut running = 0.0;
            for &x in r.values() {
                running += (x / total).as_f64();
                cumulative.push(running);
            }
            // Last item with positive weight absorbs rounding at the top end.
            let last = r
                .values()
                .iter()
                .rposition(|&x| x > T::zero())
                .expect("positive total implies a positive entry");
            for _ in 0..trials {
                let u = rng.random::<f64>();
                let pick = cumulative
                    .iter()
                    .position(|&cdf| u < cdf)
                    .unwrap_or(last)
                    .min(last);
                acc.push(profits[pick]);
            }
        }
    }

    let (mean_profit, std_error) = acc.finish();
    Ok(SimEstimate {
        mean_profit,
        std_error,
        trials,
        seed,
        rng: RNG_ALGORITHM,
    })
}

struct Welford<T> {
    count: u64,
    mean: T,
    m2: T,
}

impl<T: Scalar> Welford<T> {
    fn new() -> Self {
        Self {
            count: 0,
            mean: T::zero(),
            m2: T::zero(),
        }
    }

    fn push(&mut self, x: T) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean = self.mean + delta / T::lit(self.count as f64);
        self.m2 = self.m2 + delta * (x - self.mean);
    }

    fn finish(self) -> (T, T) {
        if self.count < 2 {
            return (self.mean, T::zero());
        }
        let n = T::lit(self.count as f64);
        let var = self.m2 / (n - T::one());
        (self.mean, (var / n).sqrt())
    }
}
