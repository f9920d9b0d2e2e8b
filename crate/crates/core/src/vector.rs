//! Rating and profit vectors.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Ratings for `n` items on the scale `[0, max_rating]`.
///
/// The same type carries the customer's true ratings and the vendor's
/// recommendation. Solver outputs are built with [`RatingVector::unbounded`]
/// because the closed-form optimum may leave the rating scale; use
/// [`RatingVector::cap_violations`] and [`RatingVector::negative_entries`] to
/// inspect it.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingVector<T> {
    values: Vec<T>,
    max_rating: T,
}

impl<T: Scalar> RatingVector<T> {
    /// Builds a vector whose entries must all lie in `[0, max_rating]`.
    pub fn new(values: Vec<T>, max_rating: T) -> Result<Self> {
        let v = Self::unbounded(values, max_rating)?;
        for (index, &value) in v.values.iter().enumerate() {
            if value < T::zero() || value > max_rating {
                return Err(Error::RatingOutOfRange {
                    index,
                    value: value.as_f64(),
                    max: max_rating.as_f64(),
                });
            }
        }
        Ok(v)
    }

    /// Builds a vector that only has to be finite and non-empty. Entries may
    /// fall outside the rating scale.
    pub fn unbounded(values: Vec<T>, max_rating: T) -> Result<Self> {
        if !(max_rating > T::zero() && max_rating.is_finite()) {
            return Err(Error::InvalidMaxRating(max_rating.as_f64()));
        }
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { values, max_rating })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn max_rating(&self) -> T {
        self.max_rating
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm_sq(&self) -> T {
        scalar::norm_sq(&self.values)
    }

    pub fn sum(&self) -> T {
        self.values.iter().copied().sum()
    }

    pub fn dot(&self, other: &Self) -> Result<T> {
        self.check_len(other.len())?;
        Ok(scalar::dot(&self.values, &other.values))
    }

    pub(crate) fn check_len(&self, other: usize) -> Result<()> {
        if self.len() != other {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other,
            });
        }
        Ok(())
    }

    /// Indices with a rating above the maximum.
    pub fn cap_violations(&self) -> Vec<usize> {
        self.indices_where(|x| x > self.max_rating)
    }

    /// Indices with a negative rating.
    pub fn negative_entries(&self) -> Vec<usize> {
        self.indices_where(|x| x < T::zero())
    }

    /// Projects every entry onto `[0, max_rating]`.
    pub fn clamped(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|&x| x.max(T::zero()).min(self.max_rating))
            .collect();
        Self {
            values,
            max_rating: self.max_rating,
        }
    }

    pub fn is_within_scale(&self) -> bool {
        self.cap_violations().is_empty() && self.negative_entries().is_empty()
    }

    fn indices_where(&self, pred: impl Fn(T) -> bool) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &x)| pred(x))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Per-item profit earned when the item is purchased. Every entry is strictly
/// positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfitVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> ProfitVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value <= T::zero() {
                return Err(Error::NonPositiveProfit {
                    index,
                    value: value.as_f64(),
                });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest single-item profit, `V_max`.
    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn norm_sq(&self) -> T {
        scalar::norm_sq(&self.values)
    }
}
