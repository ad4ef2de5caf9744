//! Scalar abstraction shared by every solver.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point coordinate type: `f32` or `f64`.
///
/// Exact rational coordinates are not supported; Euclidean lengths need `sqrt`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Relative tolerance used when two weights are compared.
    const WEIGHT_RTOL: f64;
    /// Absolute tolerance below which two pair distances count as tied.
    const TIE_TOL: f64;
    /// Relative tolerance for the collinearity and concyclicity certificates.
    const SHAPE_RTOL: f64;

    /// Converts an `f64` literal. Panics only for values the type cannot hold.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of range for scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar is always representable as f64")
    }

    /// `a` and `b` agree within [`Self::WEIGHT_RTOL`] relative to their magnitude.
    #[inline]
    fn approx_eq(a: Self, b: Self) -> bool {
        let scale = Self::one().max(a.abs()).max(b.abs());
        (a - b).abs() <= Self::lit(Self::WEIGHT_RTOL) * scale
    }
}

impl Scalar for f64 {
    const WEIGHT_RTOL: f64 = 1e-9;
    const TIE_TOL: f64 = 1e-12;
    const SHAPE_RTOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const WEIGHT_RTOL: f64 = 1e-5;
    const TIE_TOL: f64 = 1e-6;
    const SHAPE_RTOL: f64 = 1e-5;
}

/// Total order on scalars for sorting; NaN never reaches here because
/// coordinates are checked finite at construction.
#[inline]
pub(crate) fn cmp<T: Scalar>(a: T, b: T) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_eq_is_relative() {
        assert!(f64::approx_eq(1e6, 1e6 + 1e-4));
        assert!(!f64::approx_eq(1.0, 1.0 + 1e-6));
        assert!(f32::approx_eq(1.0, 1.000_001));
    }
}
