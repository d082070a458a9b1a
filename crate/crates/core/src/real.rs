//! Scalar abstraction shared by every module.
//!
//! All geometry, operator and solver code is written against [`Real`], so the
//! same formulas run in `f32` or `f64`. Closed-form coefficient families are
//! additionally written against [`Analytic`], which lets one expression be
//! evaluated either at a point or as a truncated Taylor series.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Lossy conversion used for error payloads and reports.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Values on which the elementary functions of a scaled argument are defined.
///
/// `x.sin_of(a)` is `sin(a·x)`. For a plain scalar this is a number; for a
/// [`Series`](crate::series::Series) it is the Taylor expansion of the
/// composed function.
pub trait Analytic<T: Real>:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<T, Output = Self>
    + Sub<T, Output = Self>
    + Mul<T, Output = Self>
    + Div<T, Output = Self>
{
    fn sin_of(&self, a: T) -> Self;
    fn cos_of(&self, a: T) -> Self;
    fn sinh_of(&self, a: T) -> Self;
    fn cosh_of(&self, a: T) -> Self;
    fn recip(&self) -> Self;
    /// A constant with the same shape as `self`.
    fn constant(&self, c: T) -> Self;
}

impl<T: Real> Analytic<T> for T {
    #[inline]
    fn sin_of(&self, a: T) -> Self {
        (a * *self).sin()
    }
    #[inline]
    fn cos_of(&self, a: T) -> Self {
        (a * *self).cos()
    }
    #[inline]
    fn sinh_of(&self, a: T) -> Self {
        (a * *self).sinh()
    }
    #[inline]
    fn cosh_of(&self, a: T) -> Self {
        (a * *self).cosh()
    }
    #[inline]
    fn recip(&self) -> Self {
        T::one() / *self
    }
    #[inline]
    fn constant(&self, c: T) -> Self {
        c
    }
}

/// Maximum of the absolute values, zero for an empty input.
pub(crate) fn max_abs<T: Real>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |m, v| m.max(v.abs()))
}
