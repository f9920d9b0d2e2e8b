use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Central-difference gradient of `f` at `r` with step `h`; error is `O(h²)`.
pub fn finite_diff_gradient<T, F>(f: F, r: &[T], h: T) -> Result<Vec<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> T,
{
    if !(h > T::zero() && h.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "step must be positive, got {h}"
        )));
    }
    let mut x = r.to_vec();
    let mut grad = Vec::with_capacity(r.len());
    for i in 0..r.len() {
        let orig = x[i];
        x[i] = orig + h;
        let up = f(&x);
        x[i] = orig - h;
        let down = f(&x);
        x[i] = orig;
        grad.push((up - down) / (h + h));
    }
    Ok(grad)
}
