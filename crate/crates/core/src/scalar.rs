use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};
use serde::{de::DeserializeOwned, Serialize};

/// Floating-point scalar the whole toolkit is generic over (`f32` or `f64`).
pub trait Scalar:
    Float
    + FromPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Absolute tolerance used for level-wise equality and invariant checks,
    /// scaled by `max(1, |v|)` at the call site.
    fn level_tolerance() -> Self {
        let floor = Self::from_f64(1e-12).unwrap_or_else(Self::epsilon);
        floor.max(Self::epsilon() * Self::from_u8(16).unwrap())
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + Serialize
        + DeserializeOwned
        + 'static
{
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn cst<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in scalar type")
}

#[inline]
pub(crate) fn idx<T: Scalar>(i: usize) -> T {
    T::from_usize(i).expect("index representable in scalar type")
}

#[inline]
pub(crate) fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Tolerance for comparing `a` against `b`, relative to their magnitude.
#[inline]
pub(crate) fn tol_for<T: Scalar>(a: T, b: T) -> T {
    T::level_tolerance() * T::one().max(a.abs()).max(b.abs())
}
