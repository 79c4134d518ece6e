//! Newton iteration on the scalarized objective `F`, with trace capture,
//! convergence-order estimation and post-hoc verification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;
use crate::level::{
    comparability_check, eval_fuzzy, level_slopes, non_dominance_check, scalarize,
    scalarize_derivative, ComparabilityVerdict, DerivativeOrder, Direction, FuzzyFunction,
    NonDominance, ScalarizationConfig,
};
use crate::scalar::{cst, idx, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct NewtonConfig<T> {
    pub x0: T,
    /// Stop when `|x_{k+1} - x_k| < eps`.
    pub eps: T,
    pub max_iter: usize,
    /// `|F''|` below this is treated as zero.
    pub d2_floor: T,
    pub scal: ScalarizationConfig<T>,
}

impl<T: Scalar> NewtonConfig<T> {
    pub fn new(x0: T) -> Self {
        Self {
            x0,
            eps: cst(1e-5),
            max_iter: 100,
            d2_floor: cst(1e-12),
            scal: ScalarizationConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.eps.is_nan() || self.eps <= T::zero() {
            return Err(Error::Config(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.d2_floor.is_nan() || self.d2_floor <= T::zero() {
            return Err(Error::Config(format!(
                "d2_floor must be positive, got {}",
                self.d2_floor
            )));
        }
        if !self.x0.is_finite() {
            return Err(Error::Config(format!("x0 must be finite, got {}", self.x0)));
        }
        self.scal.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Converged,
    SecondDerivativeNearZero,
    MaxIterExceeded,
    NonFinite,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Converged => "converged",
            Self::SecondDerivativeNearZero => "second-derivative-near-zero",
            Self::MaxIterExceeded => "max-iter-exceeded",
            Self::NonFinite => "non-finite",
        }
    }
}

/// Sign of `F''` at the returned point; the iteration itself only finds
/// stationary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StationarityKind {
    LocalMin,
    LocalMax,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<T> {
    pub k: usize,
    pub x: T,
    pub value: T,
    pub d1: T,
    pub d2: T,
    /// `-F'/F''`; `None` when `F''` fell below the floor.
    pub step: Option<T>,
    pub fuzzy_value: FuzzyNumber<T>,
}

impl<T: Scalar> IterationRecord<T> {
    pub fn next_x(&self) -> Option<T> {
        self.step.map(|s| self.x + s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<T> {
    pub status: SolveStatus,
    pub xstar: T,
    pub trace: Vec<IterationRecord<T>>,
    pub stationarity_kind: StationarityKind,
}

impl<T: Scalar> SolveResult<T> {
    pub fn converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }

    /// All iterates `x_0, x_1, …`, ending with `xstar` when the last step was taken.
    pub fn iterates(&self) -> Vec<T> {
        let mut xs: Vec<T> = self.trace.iter().map(|r| r.x).collect();
        if let Some(next) = self.trace.last().and_then(IterationRecord::next_x) {
            xs.push(next);
        }
        xs
    }
}

enum Evaluated<T> {
    Record(IterationRecord<T>),
    NonFinite,
}

fn evaluate<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    k: usize,
    x: T,
    cfg: &NewtonConfig<T>,
) -> Result<Evaluated<T>> {
    let attempt = || -> Result<IterationRecord<T>> {
        let value = scalarize(f, x, &cfg.scal)?;
        let d1 = scalarize_derivative(f, x, &cfg.scal, DerivativeOrder::First)?.value;
        let d2 = scalarize_derivative(f, x, &cfg.scal, DerivativeOrder::Second)?.value;
        let fuzzy_value = eval_fuzzy(f, x, cfg.scal.alpha_points)?;
        Ok(IterationRecord {
            k,
            x,
            value,
            d1,
            d2,
            step: None,
            fuzzy_value,
        })
    };
    match attempt() {
        Ok(r) => Ok(Evaluated::Record(r)),
        Err(Error::NonFinite { .. }) => Ok(Evaluated::NonFinite),
        Err(e) => Err(e),
    }
}

fn classify<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: &NewtonConfig<T>,
) -> StationarityKind {
    match scalarize_derivative(f, x, &cfg.scal, DerivativeOrder::Second) {
        Ok(d) if d.value.abs() < cfg.d2_floor => StationarityKind::Inconclusive,
        Ok(d) if d.value > T::zero() => StationarityKind::LocalMin,
        Ok(d) if d.value < T::zero() => StationarityKind::LocalMax,
        _ => StationarityKind::Inconclusive,
    }
}

/// Runs `x_{k+1} = x_k - F'(x_k)/F''(x_k)` from `cfg.x0`.
///
/// No damping or line search. Non-convergence is reported through
/// [`SolveStatus`]; only an invalid configuration, a start outside the
/// domain, or an iterate leaving it is an error.
pub fn solve<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    cfg: &NewtonConfig<T>,
) -> Result<SolveResult<T>> {
    cfg.validate()?;
    f.domain().check(cfg.x0)?;

    let mut trace = Vec::new();
    let mut x = cfg.x0;
    let status = loop {
        if trace.len() >= cfg.max_iter {
            break SolveStatus::MaxIterExceeded;
        }
        let mut rec = match evaluate(f, trace.len(), x, cfg)? {
            Evaluated::Record(r) => r,
            Evaluated::NonFinite => break SolveStatus::NonFinite,
        };
        if rec.d2.abs() < cfg.d2_floor {
            trace.push(rec);
            break SolveStatus::SecondDerivativeNearZero;
        }
        let step = -rec.d1 / rec.d2;
        if !step.is_finite() || !(x + step).is_finite() {
            trace.push(rec);
            break SolveStatus::NonFinite;
        }
        rec.step = Some(step);
        trace.push(rec);
        x = x + step;
        f.domain().check(x)?;
        if step.abs() < cfg.eps {
            break SolveStatus::Converged;
        }
    };

    let stationarity_kind = classify(f, x, cfg);
    Ok(SolveResult {
        status,
        xstar: x,
        trace,
        stationarity_kind,
    })
}

/// Fitted `e_{k+1} ≈ C·e_kᵖ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ConvergenceOrder<T> {
    pub order: T,
    pub constant: T,
    pub pairs_used: usize,
}

const TAIL_PAIRS: usize = 3;

/// Least-squares slope of `log e_{k+1}` against `log e_k` over the last
/// three consecutive error pairs, with `e_k = |x_k - xstar|`.
///
/// Errors at the rounding floor of `xstar` are discarded first.
pub fn estimate_order_from_iterates<T: Scalar>(
    iterates: &[T],
    xstar: T,
) -> Result<ConvergenceOrder<T>> {
    let floor = T::epsilon() * idx::<T>(64) * T::one().max(xstar.abs());
    let errors: Vec<T> = iterates
        .iter()
        .map(|&x| (x - xstar).abs())
        .take_while(|&e| e > floor)
        .collect();
    let distinct = errors.windows(2).all(|w| w[0] != w[1]);
    if errors.len() < 4 || !distinct {
        return Err(Error::InsufficientData(format!(
            "need at least 4 distinct nonzero errors, have {}",
            errors.len()
        )));
    }
    let pairs: Vec<(T, T)> = errors.windows(2).map(|w| (w[0].ln(), w[1].ln())).collect();
    let tail = &pairs[pairs.len().saturating_sub(TAIL_PAIRS)..];
    let n = idx::<T>(tail.len());
    let mx = tail.iter().fold(T::zero(), |a, p| a + p.0) / n;
    let my = tail.iter().fold(T::zero(), |a, p| a + p.1) / n;
    let (sxy, sxx) = tail
        .iter()
        .fold((T::zero(), T::zero()), |(sxy, sxx), &(x, y)| {
            (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
        });
    if sxx <= T::zero() {
        return Err(Error::InsufficientData("errors do not vary".into()));
    }
    let order = sxy / sxx;
    Ok(ConvergenceOrder {
        order,
        constant: (my - order * mx).exp(),
        pairs_used: tail.len(),
    })
}

pub fn estimate_convergence_order<T: Scalar>(
    trace: &[IterationRecord<T>],
    xstar: T,
) -> Result<ConvergenceOrder<T>> {
    let xs: Vec<T> = trace.iter().map(|r| r.x).collect();
    estimate_order_from_iterates(&xs, xstar)
}

/// Sampling settings for the neighborhood checks in [`verify_solution`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CheckConfig<T> {
    /// Half-width ε of the non-dominance neighborhood.
    pub nbhd: T,
    pub samples: usize,
    /// Comparability is sampled for `λ ∈ ]0, delta[`.
    pub delta: T,
}

impl<T: Scalar> Default for CheckConfig<T> {
    fn default() -> Self {
        Self {
            nbhd: cst(1e-2),
            samples: 100,
            delta: cst(1e-2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct VerificationReport<T> {
    pub xstar: T,
    pub d1: T,
    pub d2: T,
    /// `10·eps·max(1, |F''(x*)|)`.
    pub stationarity_tol: T,
    pub stationary: bool,
    /// Largest `|(f_α^L)'(x*)|` and `|(f_α^U)'(x*)|` over the α-grid.
    pub level_slope_max_lo: T,
    pub level_slope_max_hi: T,
    pub non_dominance: NonDominance<T>,
    pub comparability_forward: ComparabilityVerdict<T>,
    pub comparability_backward: ComparabilityVerdict<T>,
}

impl<T: Scalar> VerificationReport<T> {
    /// Stationary and no dominating neighbor found.
    pub fn passed(&self) -> bool {
        self.stationary && self.non_dominance.is_non_dominated()
    }
}

/// Post-hoc audit of a candidate point.
pub fn verify_point<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    xstar: T,
    cfg: &NewtonConfig<T>,
    check: &CheckConfig<T>,
) -> Result<VerificationReport<T>> {
    let d1 = scalarize_derivative(f, xstar, &cfg.scal, DerivativeOrder::First)?.value;
    let d2 = scalarize_derivative(f, xstar, &cfg.scal, DerivativeOrder::Second)?.value;
    let stationarity_tol = idx::<T>(10) * cfg.eps * T::one().max(d2.abs());
    let slopes = level_slopes(f, xstar, &cfg.scal)?;
    let (level_slope_max_lo, level_slope_max_hi) = slopes
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(lo, hi)| {
            (a.max(lo.abs()), b.max(hi.abs()))
        });
    let m = cfg.scal.alpha_points;
    Ok(VerificationReport {
        xstar,
        d1,
        d2,
        stationarity_tol,
        stationary: d1.abs() < stationarity_tol,
        level_slope_max_lo,
        level_slope_max_hi,
        non_dominance: non_dominance_check(f, xstar, check.nbhd, check.samples, m)?,
        comparability_forward: comparability_check(
            f,
            xstar,
            Direction::Forward,
            check.delta,
            check.samples,
            m,
        )?,
        comparability_backward: comparability_check(
            f,
            xstar,
            Direction::Backward,
            check.delta,
            check.samples,
            m,
        )?,
    })
}

pub fn verify_solution<T: Scalar, F: FuzzyFunction<T> + ?Sized>(
    f: &F,
    result: &SolveResult<T>,
    cfg: &NewtonConfig<T>,
    check: &CheckConfig<T>,
) -> Result<VerificationReport<T>> {
    verify_point(f, result.xstar, cfg, check)
}
