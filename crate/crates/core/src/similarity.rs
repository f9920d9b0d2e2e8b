//! Similarity measures between a customer's ratings `c` and a recommendation
//! `r`, and the Euclidean balls that Dice and Jaccard thresholds carve out.
//!
//! All four measures return values in `[0, 1]` for nonnegative inputs. Only
//! Dice and Jaccard have a sphere form:
//!
//! ```text
//! dice(c, r) >= tau    <=>  |r - c/tau|^2 <= (1/tau^2 - 1) |c|^2
//! jaccard(c, r) >= tau <=>  |r - c(1+tau)/(2tau)|^2 <= ((1+tau)^2/(4tau^2) - 1) |c|^2
//! ```
//!
//! The Jaccard ball is the Dice ball at threshold `2tau/(1+tau)`, which is how
//! the solvers support both measures.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::vector::RatingVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityMeasure {
    Dice,
    Jaccard,
    Cosine,
    OneMinusMse,
}

impl SimilarityMeasure {
    pub fn evaluate<T: Scalar>(self, c: &RatingVector<T>, r: &RatingVector<T>) -> Result<T> {
        match self {
            Self::Dice => dice(c, r),
            Self::Jaccard => jaccard(c, r),
            Self::Cosine => cosine(c, r),
            Self::OneMinusMse => one_minus_mse(c, r),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Dice => "dice",
            Self::Jaccard => "jaccard",
            Self::Cosine => "cosine",
            Self::OneMinusMse => "one_minus_mse",
        }
    }
}

fn pair_stats<T: Scalar>(c: &RatingVector<T>, r: &RatingVector<T>) -> Result<(T, T, T)> {
    c.check_len(r.len())?;
    let cc = c.norm_sq();
    if cc == T::zero() {
        return Err(Error::DegenerateCustomer);
    }
    Ok((scalar::dot(c.values(), r.values()), cc, r.norm_sq()))
}

/// `2 c·r / (|c|² + |r|²)`.
pub fn dice<T: Scalar>(c: &RatingVector<T>, r: &RatingVector<T>) -> Result<T> {
    let (cr, cc, rr) = pair_stats(c, r)?;
    Ok((cr + cr) / (cc + rr))
}

/// `c·r / (|c|² + |r|² - c·r)`.
pub fn jaccard<T: Scalar>(c: &RatingVector<T>, r: &RatingVector<T>) -> Result<T> {
    let (cr, cc, rr) = pair_stats(c, r)?;
    Ok(cr / (cc + rr - cr))
}

/// Cosine of the angle between `c` and `r`. Blind to vector length.
pub fn cosine<T: Scalar>(c: &RatingVector<T>, r: &RatingVector<T>) -> Result<T> {
    let (cr, cc, rr) = pair_stats(c, r)?;
    if rr == T::zero() {
        return Err(Error::ZeroRecommendation);
    }
    Ok(cr / (cc * rr).sqrt())
}

/// `1 - Σ((c_i - r_i)/m)² / n`, with `m` taken from `c`.
///
/// Unlike the other measures this is defined for an all-zero `c`.
pub fn one_minus_mse<T: Scalar>(c: &RatingVector<T>, r: &RatingVector<T>) -> Result<T> {
    c.check_len(r.len())?;
    let m = c.max_rating();
    let sq: T = c
        .values()
        .iter()
        .zip(r.values())
        .map(|(&ci, &ri)| {
            let d = (ci - ri) / m;
            d * d
        })
        .sum();
    Ok(T::one() - sq / T::lit(c.len() as f64))
}

/// A similarity measure paired with the minimum value the recommendation must
/// keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrustConstraint<T> {
    measure: SimilarityMeasure,
    tau: T,
}

impl<T: Scalar> TrustConstraint<T> {
    pub fn new(measure: SimilarityMeasure, tau: T) -> Result<Self> {
        check_tau(tau)?;
        Ok(Self { measure, tau })
    }

    pub fn dice(tau: T) -> Result<Self> {
        Self::new(SimilarityMeasure::Dice, tau)
    }

    pub fn measure(&self) -> SimilarityMeasure {
        self.measure
    }

    pub fn tau(&self) -> T {
        self.tau
    }

    pub fn similarity(&self, c: &RatingVector<T>, r: &RatingVector<T>) -> Result<T> {
        self.measure.evaluate(c, r)
    }

    /// True when `r` keeps the required similarity, up to
    /// [`Scalar::BOUNDARY_TOL`].
    pub fn is_satisfied(&self, c: &RatingVector<T>, r: &RatingVector<T>) -> Result<bool> {
        Ok(self.similarity(c, r)? >= self.tau - T::BOUNDARY_TOL)
    }

    /// Dice threshold whose ball coincides with this constraint's ball.
    pub fn dice_equivalent_tau(&self) -> Result<T> {
        match self.measure {
            SimilarityMeasure::Dice => Ok(self.tau),
            SimilarityMeasure::Jaccard => Ok((self.tau + self.tau) / (T::one() + self.tau)),
            other => Err(Error::UnsupportedMeasure(other.name())),
        }
    }

    pub fn sphere(&self, c: &RatingVector<T>) -> Result<SphereRegion<T>> {
        match self.measure {
            SimilarityMeasure::Dice => dice_sphere(c, self.tau),
            SimilarityMeasure::Jaccard => jaccard_sphere(c, self.tau),
            other => Err(Error::UnsupportedMeasure(other.name())),
        }
    }
}

pub(crate) fn check_tau<T: Scalar>(tau: T) -> Result<()> {
    if tau > T::zero() && tau <= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidTau(tau.as_f64()))
    }
}

/// Closed Euclidean ball `{ r : |r - center|² <= radius_squared }`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRegion<T> {
    pub center: Vec<T>,
    pub radius_squared: T,
}

impl<T: Scalar> SphereRegion<T> {
    pub fn radius(&self) -> T {
        self.radius_squared.sqrt()
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `|r - center|² - radius²`; nonpositive inside the ball.
    pub fn excess(&self, r: &[T]) -> T {
        let d: T = self
            .center
            .iter()
            .zip(r)
            .map(|(&a, &b)| (b - a) * (b - a))
            .sum();
        d - self.radius_squared
    }

    pub fn contains(&self, r: &[T]) -> bool {
        self.excess(r) <= T::zero()
    }

    /// Point where the ray from the center along `direction` leaves the ball.
    /// A zero direction yields the center.
    pub fn surface_point(&self, direction: &[T]) -> Vec<T> {
        let len = scalar::norm_sq(direction).sqrt();
        if len == T::zero() {
            return self.center.clone();
        }
        let scale = self.radius() / len;
        self.center
            .iter()
            .zip(direction)
            .map(|(&x, &d)| x + scale * d)
            .collect()
    }
}

fn ball_from_center_scale<T: Scalar>(c: &RatingVector<T>, scale: T) -> Result<SphereRegion<T>> {
    let cc = c.norm_sq();
    if cc == T::zero() {
        return Err(Error::DegenerateCustomer);
    }
    // |r - s·c|² <= (s² - 1)|c|² for both measures.
    let radius_squared = ((scale * scale - T::one()) * cc).max(T::zero());
    Ok(SphereRegion {
        center: c.values().iter().map(|&x| x * scale).collect(),
        radius_squared,
    })
}

/// Ball of recommendations with Dice similarity at least `tau`.
pub fn dice_sphere<T: Scalar>(c: &RatingVector<T>, tau: T) -> Result<SphereRegion<T>> {
    check_tau(tau)?;
    ball_from_center_scale(c, T::one() / tau)
}

/// Ball of recommendations with Jaccard similarity at least `tau`.
pub fn jaccard_sphere<T: Scalar>(c: &RatingVector<T>, tau: T) -> Result<SphereRegion<T>> {
    check_tau(tau)?;
    ball_from_center_scale(c, (T::one() + tau) / (tau + tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[f64]) -> RatingVector<f64> {
        RatingVector::new(v.to_vec(), 5.0).unwrap()
    }

    #[test]
    fn dice_examples() {
        assert_eq!(dice(&rv(&[3.0, 4.0]), &rv(&[3.0, 4.0])).unwrap(), 1.0);
        assert_eq!(dice(&rv(&[2.0, 0.0]), &rv(&[0.0, 5.0])).unwrap(), 0.0);
        let d = dice(&rv(&[1.0; 10]), &rv(&[5.0; 10])).unwrap();
        // 2·50 / (10 + 250)
        assert!((d - 5.0 / 13.0).abs() < 1e-15);
        assert!((d - 0.384615).abs() < 1e-6);
    }

    #[test]
    fn jaccard_examples() {
        assert_eq!(jaccard(&rv(&[3.0, 4.0]), &rv(&[3.0, 4.0])).unwrap(), 1.0);
        assert_eq!(jaccard(&rv(&[2.0, 0.0]), &rv(&[0.0, 5.0])).unwrap(), 0.0);
        let j = jaccard(&rv(&[1.0; 10]), &rv(&[5.0; 10])).unwrap();
        assert!((j - 5.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn cosine_examples() {
        assert!((cosine(&rv(&[1.0; 10]), &rv(&[5.0; 10])).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cosine(&rv(&[2.0, 0.0]), &rv(&[0.0, 5.0])).unwrap(), 0.0);
        let scaled = RatingVector::unbounded(vec![6.0, 8.0], 5.0).unwrap();
        assert!((cosine(&rv(&[3.0, 4.0]), &scaled).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            cosine(&rv(&[1.0, 1.0]), &rv(&[0.0, 0.0])),
            Err(Error::ZeroRecommendation)
        );
    }

    #[test]
    fn one_minus_mse_examples() {
        let c = rv(&[3.0, 1.0, 4.5]);
        assert_eq!(one_minus_mse(&c, &c).unwrap(), 1.0);
        assert_eq!(one_minus_mse(&rv(&[0.0; 7]), &rv(&[5.0; 7])).unwrap(), 0.0);

        let n = 100;
        let mut c = vec![1.0; n];
        let mut r = vec![1.0; n];
        c[..3].fill(5.0);
        r[n - 3..].fill(5.0);
        let v = one_minus_mse(&rv(&c), &rv(&r)).unwrap();
        assert!((v - 0.9616).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_mismatched_inputs() {
        let zero = rv(&[0.0, 0.0]);
        assert_eq!(
            dice(&zero, &rv(&[1.0, 2.0])),
            Err(Error::DegenerateCustomer)
        );
        assert_eq!(jaccard(&zero, &zero), Err(Error::DegenerateCustomer));
        assert_eq!(
            dice(&rv(&[1.0]), &rv(&[1.0, 2.0])),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn dice_sphere_examples() {
        let s = dice_sphere(&rv(&[4.0, 2.0]), 1.0).unwrap();
        assert_eq!(s.center, vec![4.0, 2.0]);
        assert_eq!(s.radius_squared, 0.0);

        let s = dice_sphere(&rv(&[4.0, 2.0]), 0.9).unwrap();
        assert!((s.center[0] - 40.0 / 9.0).abs() < 1e-12);
        assert!((s.center[1] - 20.0 / 9.0).abs() < 1e-12);
        assert!((s.radius_squared - 4.691358).abs() < 1e-6);

        let c = rv(&[1.0, 0.0, 0.0]);
        let s = dice_sphere(&c, 0.5).unwrap();
        assert_eq!(s.center, vec![2.0, 0.0, 0.0]);
        assert!((s.radius_squared - 3.0).abs() < 1e-12);
        let edge = RatingVector::unbounded(vec![2.0 + 3f64.sqrt(), 0.0, 0.0], 5.0).unwrap();
        assert!((dice(&c, &edge).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn jaccard_sphere_examples() {
        let s = jaccard_sphere(&rv(&[4.0, 2.0]), 1.0).unwrap();
        assert_eq!(s.center, vec![4.0, 2.0]);
        assert_eq!(s.radius_squared, 0.0);

        let c = rv(&[1.0, 0.0]);
        let s = jaccard_sphere(&c, 0.5).unwrap();
        assert_eq!(s.center, vec![1.5, 0.0]);
        assert!((s.radius_squared - 1.25).abs() < 1e-12);
        let edge = RatingVector::unbounded(vec![1.5 + 1.25f64.sqrt(), 0.0], 5.0).unwrap();
        assert!((jaccard(&c, &edge).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn sphere_rejects_bad_tau() {
        let c = rv(&[1.0, 2.0]);
        for tau in [0.0, -0.1, 1.0001, f64::NAN] {
            assert!(matches!(dice_sphere(&c, tau), Err(Error::InvalidTau(_))));
            assert!(matches!(jaccard_sphere(&c, tau), Err(Error::InvalidTau(_))));
        }
        assert_eq!(
            dice_sphere(&rv(&[0.0, 0.0]), 0.5),
            Err(Error::DegenerateCustomer)
        );
    }

    #[test]
    fn jaccard_ball_is_dice_ball_at_equivalent_threshold() {
        let c = rv(&[4.0, 2.0, 1.0]);
        let tc = TrustConstraint::new(SimilarityMeasure::Jaccard, 0.7).unwrap();
        let a = tc.sphere(&c).unwrap();
        let b = dice_sphere(&c, tc.dice_equivalent_tau().unwrap()).unwrap();
        for (x, y) in a.center.iter().zip(&b.center) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((a.radius_squared - b.radius_squared).abs() < 1e-12);
    }

    #[test]
    fn cosine_and_mse_have_no_sphere() {
        let c = rv(&[1.0, 2.0]);
        let tc = TrustConstraint::new(SimilarityMeasure::Cosine, 0.9).unwrap();
        assert_eq!(tc.sphere(&c), Err(Error::UnsupportedMeasure("cosine")));
    }

    #[test]
    fn works_in_single_precision() {
        let c = RatingVector::new(vec![1.0f32; 10], 5.0).unwrap();
        let r = RatingVector::new(vec![5.0f32; 10], 5.0).unwrap();
        assert!((dice(&c, &r).unwrap() - 5.0 / 13.0).abs() < 1e-6);
    }
}
