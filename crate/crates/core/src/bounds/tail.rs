use crate::scalar::Scalar;

use super::{parameter, BoundsError};

/// `Σ_{n>x} n^-s <= 1/((s-1)·x^(s-1))`, which also bounds
/// `∏_{p>x} (1 - p^-s)^-1 - 1`.
pub fn euler_tail_bound<T: Scalar>(s: u32, x: u64) -> Result<T, BoundsError> {
    if s < 2 {
        return Err(parameter("s", format!("{s}: the tail Σ n^-s diverges for s < 2")));
    }
    if x < 1 {
        return Err(parameter("x", "must be >= 1"));
    }
    let den = T::from_u64((s - 1) as u64).mul_ref(&T::from_u64(x).powu(s - 1));
    Ok(den.recip_ref())
}

/// Leading term `2/((2s-1)·x^(2s-1))` of the tail bound for
/// `∏_{p>x} ((p^2s-1)/(p^2s+1))^-1 - 1`.
pub fn ratio_tail_bound<T: Scalar>(s: u32, x: u64) -> Result<T, BoundsError> {
    if s < 1 {
        return Err(parameter("s", "must be >= 1"));
    }
    if x < 1 {
        return Err(parameter("x", "must be >= 1"));
    }
    let den = T::from_u64((2 * s - 1) as u64).mul_ref(&T::from_u64(x).powu(2 * s - 1));
    Ok(T::from_u64(2).div_ref(&den))
}
