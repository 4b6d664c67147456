//! Scalar abstractions.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// A number the polynomial layers can work with: ring operations, an order,
/// and a finiteness test. Integers and rationals are always finite.
pub trait Scalar: Num + Copy + PartialOrd + Debug + Send + Sync + 'static {
    fn is_finite_scalar(self) -> bool;
}

macro_rules! impl_scalar_float {
    ($($t:ty)*) => {$(
        impl Scalar for $t {
            #[inline]
            fn is_finite_scalar(self) -> bool {
                self.is_finite()
            }
        }
    )*};
}

macro_rules! impl_scalar_exact {
    ($($t:ty)*) => {$(
        impl Scalar for $t {
            #[inline]
            fn is_finite_scalar(self) -> bool {
                true
            }
        }
    )*};
}

impl_scalar_float!(f32 f64);
impl_scalar_exact!(i32 i64 i128 Ratio<i64> Ratio<i128>);

/// Floating point scalar for the trigonometric layers (`f32` or `f64`).
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Display {
    /// Converts an `f64` literal; every `Real` can represent one approximately.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// `max(abs, 64 ε)`: an absolute tolerance given for `f64` widened to
    /// what the type can actually resolve on O(1) values.
    #[inline]
    fn tol(abs: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(abs).max(floor)
    }
}

impl<T> Real for T where T: Scalar + Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Display
{}

/// Relative difference `|x − y| / max(|x|, |y|, tiny)`.
pub fn relative_diff<T: Real>(x: T, y: T) -> T {
    let scale = x.abs().max(y.abs()).max(T::min_positive_value());
    (x - y).abs() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_floor_tracks_precision() {
        assert_eq!(f64::tol(1e-12), 1e-12);
        assert!(f32::tol(1e-12) > 1e-6);
    }

    #[test]
    fn relative_diff_handles_zero() {
        assert_eq!(relative_diff(0.0f64, 0.0), 0.0);
        assert!((relative_diff(1.0f64, 1.0 + 1e-10) - 1e-10).abs() < 1e-15);
    }
}
