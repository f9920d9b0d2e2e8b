//! Floating point abstraction shared by every solver in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the measures and solvers are generic over: `f32` or `f64`.
///
/// The closed-form solutions take square roots, so only floating point types
/// qualify.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Absolute tolerance used when comparing a similarity against its
    /// threshold, or a point against a sphere boundary.
    const BOUNDARY_TOL: Self;

    /// Converts an `f64` literal. Every finite `f64` is representable (up to
    /// rounding) in the supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must convert to the scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const BOUNDARY_TOL: Self = 1e-9;
}

impl Scalar for f32 {
    const BOUNDARY_TOL: Self = 1e-4;
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm_sq<T: Scalar>(a: &[T]) -> T {
    a.iter().map(|&x| x * x).sum()
}
