use serde::{Deserialize, Serialize};

use super::Interval;
use crate::error::{Error, Result};
use crate::scalar::{idx, to_f64, tol_for, Scalar};

/// A fuzzy number stored as its α-levels on the uniform grid
/// `α_i = i / (M - 1)`, `i = 0..M`.
///
/// Levels are nested (lower endpoints nondecreasing, upper endpoints
/// nonincreasing in α) and ordered, up to [`Scalar::level_tolerance`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "FuzzyRecord<T>",
    into = "FuzzyRecord<T>",
    bound = "T: Scalar"
)]
pub struct FuzzyNumber<T> {
    levels: Vec<Interval<T>>,
}

/// Outcome of a Hukuhara difference.
#[derive(Debug, Clone, PartialEq)]
pub enum HukuharaDiff<T> {
    Exists(FuzzyNumber<T>),
    /// The level-wise candidate is not a fuzzy number; `alpha` is the first
    /// grid level where it breaks.
    Nonexistent {
        alpha: T,
        reason: &'static str,
    },
}

impl<T> HukuharaDiff<T> {
    pub fn into_option(self) -> Option<FuzzyNumber<T>> {
        match self {
            Self::Exists(c) => Some(c),
            Self::Nonexistent { .. } => None,
        }
    }
}

pub(crate) fn grid_alpha<T: Scalar>(i: usize, m: usize) -> T {
    if i + 1 == m {
        T::one()
    } else {
        idx::<T>(i) / idx::<T>(m - 1)
    }
}

/// Checks ordering and nestedness of a level sequence; reports the first
/// offending α.
pub(crate) fn check_levels<T: Scalar>(levels: &[Interval<T>]) -> Result<()> {
    let m = levels.len();
    if m < 2 {
        return Err(Error::GridTooSmall(m));
    }
    let bad = |i: usize, reason| Error::MalformedLevels {
        alpha: to_f64(grid_alpha::<T>(i, m)),
        reason,
    };
    for (i, lv) in levels.iter().enumerate() {
        if !lv.lo().is_finite() || !lv.hi().is_finite() {
            return Err(bad(i, "non-finite endpoint"));
        }
        if lv.lo() > lv.hi() + tol_for(lv.lo(), lv.hi()) {
            return Err(bad(i, "lower endpoint exceeds upper endpoint"));
        }
        if i > 0 {
            let prev = &levels[i - 1];
            if lv.lo() + tol_for(lv.lo(), prev.lo()) < prev.lo()
                || lv.hi() > prev.hi() + tol_for(lv.hi(), prev.hi())
            {
                return Err(bad(i, "level is not nested in the previous level"));
            }
        }
    }
    Ok(())
}

impl<T: Scalar> FuzzyNumber<T> {
    /// Validates and wraps a level sequence (index `i` is α = i/(M-1)).
    pub fn from_levels(levels: Vec<Interval<T>>) -> Result<Self> {
        check_levels(&levels)?;
        Ok(Self { levels })
    }

    pub fn from_fn(grid_size: usize, f: impl Fn(T) -> Interval<T>) -> Result<Self> {
        if grid_size < 2 {
            return Err(Error::GridTooSmall(grid_size));
        }
        let levels = (0..grid_size)
            .map(|i| f(grid_alpha(i, grid_size)))
            .collect();
        Self::from_levels(levels)
    }

    pub fn crisp(v: T, grid_size: usize) -> Result<Self> {
        Self::from_fn(grid_size, |_| Interval::point(v))
    }

    pub fn grid_size(&self) -> usize {
        self.levels.len()
    }

    pub fn alpha(&self, i: usize) -> T {
        grid_alpha(i, self.levels.len())
    }

    pub fn alphas(&self) -> Vec<T> {
        (0..self.levels.len()).map(|i| self.alpha(i)).collect()
    }

    pub fn levels(&self) -> &[Interval<T>] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> Interval<T> {
        self.levels[i]
    }

    /// The α = 0 level.
    pub fn support(&self) -> Interval<T> {
        self.levels[0]
    }

    /// The α = 1 level.
    pub fn core(&self) -> Interval<T> {
        self.levels[self.levels.len() - 1]
    }

    pub fn is_crisp(&self) -> bool {
        self.levels.iter().all(|l| l.lo() == l.hi())
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.levels.len() != other.levels.len() {
            return Err(Error::GridMismatch {
                left: self.levels.len(),
                right: other.levels.len(),
            });
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Interval<T>, Interval<T>) -> Interval<T>,
    ) -> Result<Self> {
        self.same_grid(other)?;
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_levels(levels)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        let mut levels = Vec::with_capacity(self.levels.len());
        for (i, (&a, &b)) in self.levels.iter().zip(&other.levels).enumerate() {
            let q = a.checked_div(b).ok_or(Error::SingularDivisor {
                alpha: to_f64(self.alpha(i)),
            })?;
            levels.push(q);
        }
        Self::from_levels(levels)
    }

    pub fn scale(&self, lambda: T) -> Self {
        Self {
            levels: self.levels.iter().map(|l| l.scale(lambda)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            levels: self.levels.iter().map(|&l| -l).collect(),
        }
    }

    /// Level-wise image under `t ↦ t²` (tighter than `self ⊗ self` when a
    /// level straddles zero).
    pub fn square(&self) -> Self {
        Self {
            levels: self.levels.iter().map(|l| l.square()).collect(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        let mut levels = Vec::with_capacity(self.levels.len());
        for (i, l) in self.levels.iter().enumerate() {
            levels.push(l.recip().ok_or(Error::SingularDivisor {
                alpha: to_f64(self.alpha(i)),
            })?);
        }
        Self::from_levels(levels)
    }

    /// Fuzzy-max order on the grid: both endpoints ≤ at every α.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.same_grid(other)?;
        Ok(self
            .levels
            .iter()
            .zip(&other.levels)
            .all(|(a, b)| a.lo() <= b.lo() && a.hi() <= b.hi()))
    }

    /// Strict order: `leq` and strictly smaller in some endpoint at some grid α.
    pub fn lt(&self, other: &Self) -> Result<bool> {
        Ok(self.leq(other)?
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .any(|(a, b)| a.lo() < b.lo() || a.hi() < b.hi()))
    }

    pub fn comparable(&self, other: &Self) -> Result<bool> {
        Ok(self.leq(other)? || other.leq(self)?)
    }

    /// `sup_α max(|ΔL|, |ΔU|)` over the grid.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.same_grid(other)?;
        Ok(self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| (a.lo() - b.lo()).abs().max((a.hi() - b.hi()).abs()))
            .fold(T::zero(), T::max))
    }

    pub fn hukuhara_diff(&self, other: &Self) -> Result<HukuharaDiff<T>> {
        self.same_grid(other)?;
        let levels: Vec<_> = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| Interval::raw(a.lo() - b.lo(), a.hi() - b.hi()))
            .collect();
        match check_levels(&levels) {
            Ok(()) => Ok(HukuharaDiff::Exists(Self { levels })),
            Err(Error::MalformedLevels { alpha, reason }) => Ok(HukuharaDiff::Nonexistent {
                alpha: T::from_f64(alpha).unwrap_or_else(T::nan),
                reason,
            }),
            Err(e) => Err(e),
        }
    }

    /// Level-wise equality within `tol` (absolute).
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| (a.lo() - b.lo()).abs() <= tol && (a.hi() - b.hi()).abs() <= tol)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct FuzzyRecord<T> {
    alphas: Vec<T>,
    lo: Vec<T>,
    hi: Vec<T>,
}

impl<T: Scalar> TryFrom<FuzzyRecord<T>> for FuzzyNumber<T> {
    type Error = Error;

    fn try_from(rec: FuzzyRecord<T>) -> Result<Self> {
        let m = rec.alphas.len();
        if rec.lo.len() != m || rec.hi.len() != m {
            return Err(Error::Config(format!(
                "fuzzy record has {} alphas but {} lower and {} upper endpoints",
                m,
                rec.lo.len(),
                rec.hi.len()
            )));
        }
        if m < 2 {
            return Err(Error::GridTooSmall(m));
        }
        for (i, &a) in rec.alphas.iter().enumerate() {
            let want: T = grid_alpha(i, m);
            if (a - want).abs() > tol_for(a, want) {
                return Err(Error::Config(format!(
                    "alpha grid must be uniform on [0, 1]; entry {i} is {a}"
                )));
            }
        }
        let levels = rec
            .lo
            .into_iter()
            .zip(rec.hi)
            .map(|(l, h)| Interval::raw(l, h))
            .collect();
        Self::from_levels(levels)
    }
}

impl<T: Scalar> From<FuzzyNumber<T>> for FuzzyRecord<T> {
    fn from(a: FuzzyNumber<T>) -> Self {
        Self {
            alphas: a.alphas(),
            lo: a.levels.iter().map(|l| l.lo()).collect(),
            hi: a.levels.iter().map(|l| l.hi()).collect(),
        }
    }
}
