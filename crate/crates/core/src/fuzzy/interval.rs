use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{to_f64, Scalar};

/// Closed, bounded interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[T; 2]", into = "[T; 2]", bound = "T: Scalar")]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidInterval {
                lo: to_f64(lo),
                hi: to_f64(hi),
            });
        }
        Ok(Self { lo, hi })
    }

    /// Builds an interval from two endpoints in either order.
    pub fn hull(a: T, b: T) -> Self {
        Self {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub(crate) fn raw(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    pub fn point(v: T) -> Self {
        Self { lo: v, hi: v }
    }

    #[inline]
    pub fn lo(&self) -> T {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> T {
        (self.lo + self.hi) / (T::one() + T::one())
    }

    pub fn contains(&self, v: T) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(T::zero())
    }

    /// `other ⊆ self`.
    pub fn encloses(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn scale(self, lambda: T) -> Self {
        if lambda >= T::zero() {
            Self::raw(lambda * self.lo, lambda * self.hi)
        } else {
            Self::raw(lambda * self.hi, lambda * self.lo)
        }
    }

    /// Quotient by endpoint enumeration, `None` when the divisor contains zero.
    pub fn checked_div(self, rhs: Self) -> Option<Self> {
        if rhs.contains_zero() {
            return None;
        }
        Some(min_max4(
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ))
    }

    /// Image of the interval under `t ↦ t²`.
    pub fn square(self) -> Self {
        let (l2, h2) = (self.lo * self.lo, self.hi * self.hi);
        if self.lo >= T::zero() {
            Self::raw(l2, h2)
        } else if self.hi <= T::zero() {
            Self::raw(h2, l2)
        } else {
            Self::raw(T::zero(), l2.max(h2))
        }
    }

    /// `[1/hi, 1/lo]`, `None` when the interval contains zero.
    pub fn recip(self) -> Option<Self> {
        if self.contains_zero() {
            None
        } else {
            Some(Self::raw(self.hi.recip(), self.lo.recip()))
        }
    }
}

fn min_max4<T: Scalar>(a: T, b: T, c: T, d: T) -> Interval<T> {
    Interval::raw(a.min(b).min(c.min(d)), a.max(b).max(c.max(d)))
}

impl<T: Scalar> Add for Interval<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::raw(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl<T: Scalar> Add<T> for Interval<T> {
    type Output = Self;

    fn add(self, rhs: T) -> Self {
        Self::raw(self.lo + rhs, self.hi + rhs)
    }
}

impl<T: Scalar> Mul for Interval<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        min_max4(
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        )
    }
}

impl<T: Scalar> Neg for Interval<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::raw(-self.hi, -self.lo)
    }
}

impl<T: Scalar> TryFrom<[T; 2]> for Interval<T> {
    type Error = Error;

    fn try_from([lo, hi]: [T; 2]) -> Result<Self> {
        Self::new(lo, hi)
    }
}

impl<T> From<Interval<T>> for [T; 2] {
    fn from(i: Interval<T>) -> Self {
        [i.lo, i.hi]
    }
}
