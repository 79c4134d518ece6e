//! Fuzzy-valued functions of one real variable, seen through their α-level
//! functions, and the scalarization `F(x) = ∫₀¹ (f_α^L(x) + f_α^U(x)) dα`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{grid_alpha, FuzzyNumber, Interval};
use crate::quadrature::Quadrature;
use crate::scalar::{cst, idx, to_f64, tol_for, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

/// A fuzzy-valued function `f̃: X → F(ℝ)` exposed through its level endpoints.
///
/// Implementations must be pure: the solver and the checks call them from
/// several places (and possibly threads) with the same arguments.
pub trait FuzzyFunction<T: Scalar>: Send + Sync {
    /// `(f_α^L(x), f_α^U(x))`.
    fn level(&self, x: T, alpha: T) -> (T, T);

    /// Analytic x-derivatives of both level endpoints, if known.
    fn level_derivative(&self, _x: T, _alpha: T, _order: DerivativeOrder) -> Option<(T, T)> {
        None
    }

    fn domain(&self) -> Domain<T> {
        Domain::real_line()
    }
}

impl<T: Scalar, F: FuzzyFunction<T> + ?Sized> FuzzyFunction<T> for &F {
    fn level(&self, x: T, alpha: T) -> (T, T) {
        (**self).level(x, alpha)
    }
    fn level_derivative(&self, x: T, alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        (**self).level_derivative(x, alpha, order)
    }
    fn domain(&self) -> Domain<T> {
        (**self).domain()
    }
}

impl<T: Scalar, F: FuzzyFunction<T> + ?Sized> FuzzyFunction<T> for Box<F> {
    fn level(&self, x: T, alpha: T) -> (T, T) {
        (**self).level(x, alpha)
    }
    fn level_derivative(&self, x: T, alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        (**self).level_derivative(x, alpha, order)
    }
    fn domain(&self) -> Domain<T> {
        (**self).domain()
    }
}

impl<T: Scalar, F: FuzzyFunction<T> + ?Sized> FuzzyFunction<T> for Arc<F> {
    fn level(&self, x: T, alpha: T) -> (T, T) {
        (**self).level(x, alpha)
    }
    fn level_derivative(&self, x: T, alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        (**self).level_derivative(x, alpha, order)
    }
    fn domain(&self) -> Domain<T> {
        (**self).domain()
    }
}

/// Closed real interval `[lo, hi]`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Domain<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::Config(format!("empty domain [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn real_line() -> Self {
        Self {
            lo: T::neg_infinity(),
            hi: T::infinity(),
        }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn check(&self, x: T) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                x: to_f64(x),
                lo: to_f64(self.lo),
                hi: to_f64(self.hi),
            })
        }
    }
}

type LevelMap<T> = Box<dyn Fn(T, T) -> (T, T) + Send + Sync>;

/// Fuzzy-valued function assembled from closures.
pub struct LevelFn<T> {
    level: LevelMap<T>,
    d1: Option<LevelMap<T>>,
    d2: Option<LevelMap<T>>,
    domain: Domain<T>,
}

impl<T: Scalar> LevelFn<T> {
    pub fn new(level: impl Fn(T, T) -> (T, T) + Send + Sync + 'static) -> Self {
        Self {
            level: Box::new(level),
            d1: None,
            d2: None,
            domain: Domain::real_line(),
        }
    }

    /// Crisp lift of a real function: both endpoints equal `g(x)` at every α.
    pub fn crisp(g: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self::new(move |x, _| {
            let v = g(x);
            (v, v)
        })
    }

    /// Crisp lift with the analytic derivatives `g'` and `g''`.
    pub fn crisp_with_derivatives(
        g: impl Fn(T) -> T + Send + Sync + 'static,
        g1: impl Fn(T) -> T + Send + Sync + 'static,
        g2: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::crisp(g).with_derivatives(
            move |x, _| {
                let v = g1(x);
                (v, v)
            },
            move |x, _| {
                let v = g2(x);
                (v, v)
            },
        )
    }

    pub fn with_derivatives(
        mut self,
        d1: impl Fn(T, T) -> (T, T) + Send + Sync + 'static,
        d2: impl Fn(T, T) -> (T, T) + Send + Sync + 'static,
    ) -> Self {
        self.d1 = Some(Box::new(d1));
        self.d2 = Some(Box::new(d2));
        self
    }

    pub fn with_domain(mut self, domain: Domain<T>) -> Self {
        self.domain = domain;
        self
    }
}

impl<T: Scalar> FuzzyFunction<T> for LevelFn<T> {
    fn level(&self, x: T, alpha: T) -> (T, T) {
        (self.level)(x, alpha)
    }

    fn level_derivative(&self, x: T, alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        let d = match order {
            DerivativeOrder::First => self.d1.as_ref(),
            DerivativeOrder::Second => self.d2.as_ref(),
        };
        d.map(|d| d(x, alpha))
    }

    fn domain(&self) -> Domain<T> {
        self.domain
    }
}

/// Pointwise fuzzy negation `x ↦ (-1) ⊙ f̃(x)`.
pub struct Negated<F>(pub F);

impl<T: Scalar, F: FuzzyFunction<T>> FuzzyFunction<T> for Negated<F> {
    fn level(&self, x: T, alpha: T) -> (T, T) {
        let (lo, hi) = self.0.level(x, alpha);
        (-hi, -lo)
    }

    fn level_derivative(&self, x: T, alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        self.0
            .level_derivative(x, alpha, order)
            .map(|(lo, hi)| (-hi, -lo))
    }

    fn domain(&self) -> Domain<T> {
        self.0.domain()
    }
}

/// Quadrature and finite-difference settings for the scalarization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ScalarizationConfig<T> {
    pub alpha_points: usize,
    pub quadrature: Quadrature,
    /// Relative step: the actual step is `fd_step * max(1, |x|)`.
    pub fd_step: T,
}

impl<T: Scalar> Default for ScalarizationConfig<T> {
    fn default() -> Self {
        Self {
            alpha_points: 101,
            quadrature: Quadrature::Simpson,
            fd_step: cst(1e-5),
        }
    }
}

impl<T: Scalar> ScalarizationConfig<T> {
    pub fn validate(&self) -> Result<()> {
        self.quadrature.check_points(self.alpha_points)?;
        if !(self.fd_step > T::zero() && self.fd_step.is_finite()) {
            return Err(Error::Config(format!(
                "finite-difference step must be positive, got {}",
                self.fd_step
            )));
        }
        Ok(())
    }

    pub(crate) fn step_at(&self, x: T) -> T {
        self.fd_step * T::one().max(x.abs())
    }
}

/// `f̃(x)` on the uniform grid of `grid_size` levels.
pub fn eval_fuzzy<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x: T,
    grid_size: usize,
) -> Result<FuzzyNumber<T>> {
    f.domain().check(x)?;
    if grid_size < 2 {
        return Err(Error::GridTooSmall(grid_size));
    }
    let mut levels: Vec<Interval<T>> = Vec::with_capacity(grid_size);
    for i in 0..grid_size {
        let alpha = grid_alpha::<T>(i, grid_size);
        let (lo, hi) = f.level(x, alpha);
        let malformed = |reason| Error::MalformedFunction {
            x: to_f64(x),
            alpha: to_f64(alpha),
            reason,
        };
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFinite { x: to_f64(x) });
        }
        if lo > hi + tol_for(lo, hi) {
            return Err(malformed(
                "lower level function exceeds upper level function",
            ));
        }
        if let Some(prev) = levels.last() {
            if lo + tol_for(lo, prev.lo()) < prev.lo() || hi > prev.hi() + tol_for(hi, prev.hi()) {
                return Err(malformed("levels are not nested in alpha"));
            }
        }
        levels.push(Interval::hull(lo, hi));
    }
    FuzzyNumber::from_levels(levels)
}

fn integrate_levels<T: Scalar>(
    cfg: &ScalarizationConfig<T>,
    x: T,
    mut sample: impl FnMut(T) -> (T, T),
) -> Result<T> {
    let weights = cfg.quadrature.weights::<T>(cfg.alpha_points)?;
    let n = weights.len();
    let mut acc = T::zero();
    for (i, w) in weights.into_iter().enumerate() {
        let (lo, hi) = sample(grid_alpha(i, n));
        acc = acc + w * (lo + hi);
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(Error::NonFinite { x: to_f64(x) })
    }
}

/// `F(x) = ∫₀¹ (f_α^L(x) + f_α^U(x)) dα` by the configured quadrature.
pub fn scalarize<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: &ScalarizationConfig<T>,
) -> Result<T> {
    f.domain().check(x)?;
    cfg.validate()?;
    integrate_levels(cfg, x, |alpha| f.level(x, alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeMethod {
    /// Quadrature of the supplied level derivatives.
    Analytic,
    Central,
    /// One-sided stencils used at a domain boundary (first-order accurate).
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate<T> {
    pub value: T,
    pub method: DerivativeMethod,
}

/// `F'(x)` or `F''(x)`: integrates analytic level derivatives when the
/// function supplies them, otherwise differentiates `F` numerically.
pub fn scalarize_derivative<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: &ScalarizationConfig<T>,
    order: DerivativeOrder,
) -> Result<DerivativeEstimate<T>> {
    let domain = f.domain();
    domain.check(x)?;
    cfg.validate()?;

    if f.level_derivative(x, T::zero(), order).is_some() {
        let value = integrate_levels(cfg, x, |alpha| {
            f.level_derivative(x, alpha, order)
                .unwrap_or((T::nan(), T::nan()))
        })?;
        return Ok(DerivativeEstimate {
            value,
            method: DerivativeMethod::Analytic,
        });
    }

    let h = cfg.step_at(x);
    let two = idx::<T>(2);
    let big_f = |t: T| integrate_levels(cfg, t, |alpha| f.level(t, alpha));
    let (value, method) = if domain.contains(x - h) && domain.contains(x + h) {
        let (fm, fp) = (big_f(x - h)?, big_f(x + h)?);
        let v = match order {
            DerivativeOrder::First => (fp - fm) / (two * h),
            DerivativeOrder::Second => (fp - two * big_f(x)? + fm) / (h * h),
        };
        (v, DerivativeMethod::Central)
    } else {
        let (sign, method) = if domain.contains(x + two * h) {
            (T::one(), DerivativeMethod::Forward)
        } else if domain.contains(x - two * h) {
            (-T::one(), DerivativeMethod::Backward)
        } else {
            return Err(Error::OutsideDomain {
                x: to_f64(x),
                lo: to_f64(domain.lo()),
                hi: to_f64(domain.hi()),
            });
        };
        let s = sign * h;
        let (f0, f1) = (big_f(x)?, big_f(x + s)?);
        let v = match order {
            DerivativeOrder::First => (f1 - f0) / s,
            DerivativeOrder::Second => (big_f(x + two * s)? - two * f1 + f0) / (h * h),
        };
        (v, method)
    };
    if !value.is_finite() {
        return Err(Error::NonFinite { x: to_f64(x) });
    }
    Ok(DerivativeEstimate { value, method })
}

pub fn scalarize_d1<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: &ScalarizationConfig<T>,
) -> Result<T> {
    scalarize_derivative(f, x, cfg, DerivativeOrder::First).map(|d| d.value)
}

pub fn scalarize_d2<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: &ScalarizationConfig<T>,
) -> Result<T> {
    scalarize_derivative(f, x, cfg, DerivativeOrder::Second).map(|d| d.value)
}

/// First x-derivatives of both level functions at every grid α.
///
/// Uses the analytic level derivatives when available, central differences
/// of the level functions otherwise.
pub fn level_slopes<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: &ScalarizationConfig<T>,
) -> Result<Vec<(T, T)>> {
    let domain = f.domain();
    domain.check(x)?;
    cfg.validate()?;
    let m = cfg.alpha_points;
    let h = cfg.step_at(x);
    let (a, b) = match (domain.contains(x - h), domain.contains(x + h)) {
        (true, true) => (x - h, x + h),
        (false, true) => (x, x + h),
        (true, false) => (x - h, x),
        (false, false) => {
            return Err(Error::OutsideDomain {
                x: to_f64(x),
                lo: to_f64(domain.lo()),
                hi: to_f64(domain.hi()),
            })
        }
    };
    let slopes = (0..m)
        .map(|i| {
            let alpha = grid_alpha::<T>(i, m);
            f.level_derivative(x, alpha, DerivativeOrder::First)
                .unwrap_or_else(|| {
                    let (l0, u0) = f.level(a, alpha);
                    let (l1, u1) = f.level(b, alpha);
                    ((l1 - l0) / (b - a), (u1 - u0) / (b - a))
                })
        })
        .collect();
    Ok(slopes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Self::Forward => T::one(),
            Self::Backward => -T::one(),
        }
    }
}

/// Result of sampling `λ ∈ ]0, δ[` for comparability of `f̃(x₀ + λd)` with `f̃(x₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ComparabilityVerdict<T> {
    pub direction: Direction,
    pub comparable: bool,
    /// First sampled λ at which the values were incomparable.
    pub witness: Option<T>,
    pub samples: usize,
}

/// Samples `λ_j = δ·j/(n+1)`, `j = 1..=n`; points outside the domain are skipped.
pub fn comparability_check<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x0: T,
    direction: Direction,
    delta: T,
    samples: usize,
    grid_size: usize,
) -> Result<ComparabilityVerdict<T>> {
    let base = eval_fuzzy(f, x0, grid_size)?;
    let domain = f.domain();
    let mut checked = 0;
    for j in 1..=samples {
        let lambda = delta * idx::<T>(j) / idx::<T>(samples + 1);
        let x = x0 + direction.sign::<T>() * lambda;
        if !domain.contains(x) {
            continue;
        }
        checked += 1;
        let v = eval_fuzzy(f, x, grid_size)?;
        if !v.comparable(&base)? {
            return Ok(ComparabilityVerdict {
                direction,
                comparable: false,
                witness: Some(lambda),
                samples: checked,
            });
        }
    }
    Ok(ComparabilityVerdict {
        direction,
        comparable: true,
        witness: None,
        samples: checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case", bound = "T: Scalar")]
pub enum NonDominance<T> {
    NoDominatorFound { samples: usize },
    DominatedBy { x1: T, samples: usize },
}

impl<T> NonDominance<T> {
    pub fn is_non_dominated(&self) -> bool {
        matches!(self, Self::NoDominatorFound { .. })
    }
}

/// Looks for a point `x₁` in `[x* - ε, x* + ε]` with `f̃(x₁) ≺ f̃(x*)`.
///
/// The neighborhood is sampled on `samples` evenly spaced points (x* itself
/// excluded), so the resolution is `2ε / (samples - 1)`.
pub fn non_dominance_check<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    xstar: T,
    eps: T,
    samples: usize,
    grid_size: usize,
) -> Result<NonDominance<T>> {
    let base = eval_fuzzy(f, xstar, grid_size)?;
    let domain = f.domain();
    let mut checked = 0;
    let span = idx::<T>(samples.max(2) - 1);
    for j in 0..samples {
        let x1 = xstar - eps + (eps + eps) * idx::<T>(j) / span;
        if x1 == xstar || !domain.contains(x1) {
            continue;
        }
        checked += 1;
        let v = eval_fuzzy(f, x1, grid_size)?;
        if v.lt(&base)? {
            return Ok(NonDominance::DominatedBy {
                x1,
                samples: checked,
            });
        }
    }
    Ok(NonDominance::NoDominatorFound { samples: checked })
}
