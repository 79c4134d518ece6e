use serde::{Deserialize, Serialize};

use super::{FuzzyNumber, Interval};
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Scalar};

/// Triangular fuzzy number `(left, peak, right)`, serialized as `[left, peak, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[T; 3]", into = "[T; 3]", bound = "T: Scalar")]
pub struct TriangularFuzzy<T> {
    left: T,
    peak: T,
    right: T,
}

impl<T: Scalar> TriangularFuzzy<T> {
    pub fn new(left: T, peak: T, right: T) -> Result<Self> {
        let finite = left.is_finite() && peak.is_finite() && right.is_finite();
        if !finite || left > peak || peak > right {
            return Err(Error::InvalidTriangular {
                left: to_f64(left),
                peak: to_f64(peak),
                right: to_f64(right),
            });
        }
        Ok(Self { left, peak, right })
    }

    pub fn crisp(v: T) -> Self {
        Self {
            left: v,
            peak: v,
            right: v,
        }
    }

    pub fn left(&self) -> T {
        self.left
    }

    pub fn peak(&self) -> T {
        self.peak
    }

    pub fn right(&self) -> T {
        self.right
    }

    pub fn is_crisp(&self) -> bool {
        self.left == self.peak && self.peak == self.right
    }

    /// The α-cut `[(1-α)left + α·peak, (1-α)right + α·peak]`.
    pub fn alpha_cut(&self, alpha: T) -> Result<Interval<T>> {
        if !(alpha >= T::zero() && alpha <= T::one()) {
            return Err(Error::OutOfRange {
                what: "alpha",
                value: to_f64(alpha),
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(self.cut_unchecked(alpha))
    }

    /// Evaluated as `left + α(peak - left)` so that cuts are monotone in α
    /// under rounding; clamped so the core is exactly `[peak, peak]`.
    pub(crate) fn cut_unchecked(&self, alpha: T) -> Interval<T> {
        if alpha == T::one() {
            return Interval::point(self.peak);
        }
        let lo = (self.left + alpha * (self.peak - self.left)).min(self.peak);
        let hi = (self.right - alpha * (self.right - self.peak)).max(self.peak);
        Interval::raw(lo, hi)
    }

    /// Samples the cuts onto a uniform grid of `levels` alphas.
    pub fn discretize(&self, levels: usize) -> Result<FuzzyNumber<T>> {
        FuzzyNumber::from_fn(levels, |alpha| self.cut_unchecked(alpha))
    }
}

impl<T: Scalar> TryFrom<[T; 3]> for TriangularFuzzy<T> {
    type Error = Error;

    fn try_from([l, p, u]: [T; 3]) -> Result<Self> {
        Self::new(l, p, u)
    }
}

impl<T> From<TriangularFuzzy<T>> for [T; 3] {
    fn from(t: TriangularFuzzy<T>) -> Self {
        [t.left, t.peak, t.right]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(l: f64, p: f64, u: f64) -> TriangularFuzzy<f64> {
        TriangularFuzzy::new(l, p, u).unwrap()
    }

    #[test]
    fn cuts() {
        let t = tri(1.0, 2.0, 3.0);
        assert_eq!(t.alpha_cut(0.5).unwrap(), Interval::new(1.5, 2.5).unwrap());
        assert_eq!(t.alpha_cut(1.0).unwrap(), Interval::point(2.0));
        assert_eq!(
            tri(0.0, 1.0, 2.0).alpha_cut(0.0).unwrap(),
            Interval::new(0.0, 2.0).unwrap()
        );
    }

    #[test]
    fn alpha_out_of_range() {
        let t = tri(1.0, 2.0, 3.0);
        assert!(matches!(t.alpha_cut(1.5), Err(Error::OutOfRange { .. })));
        assert!(t.alpha_cut(-0.1).is_err());
        assert!(t.alpha_cut(f64::NAN).is_err());
    }

    #[test]
    fn rejects_unordered_triple() {
        assert!(TriangularFuzzy::new(2.0, 1.0, 3.0).is_err());
        assert!(TriangularFuzzy::new(1.0, 3.0, 2.0).is_err());
    }

    #[test]
    fn discretize_examples() {
        let a = tri(0.0, 1.0, 2.0).discretize(3).unwrap();
        let want = [(0.0, 2.0), (0.5, 1.5), (1.0, 1.0)];
        for (lv, (lo, hi)) in a.levels().iter().zip(want) {
            assert_eq!((lv.lo(), lv.hi()), (lo, hi));
        }
        let c = TriangularFuzzy::crisp(2.0).discretize(5).unwrap();
        assert!(c.levels().iter().all(|l| l.lo() == 2.0 && l.hi() == 2.0));
        let e = tri(1.0, 2.0, 4.0).discretize(2).unwrap();
        assert_eq!((e.level(0).lo(), e.level(0).hi()), (1.0, 4.0));
        assert_eq!((e.level(1).lo(), e.level(1).hi()), (2.0, 2.0));
        assert!(tri(0.0, 1.0, 2.0).discretize(1).is_err());
    }

    #[test]
    fn serializes_as_triple() {
        let t = tri(0.5, 1.5, 3.5);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[0.5,1.5,3.5]");
        let back: TriangularFuzzy<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<TriangularFuzzy<f64>>("[3,2,1]").is_err());
    }
}
