//! Built-in objectives (a fuzzy cubic and the single-asset maximum-return
//! problem) and the declarative problem format.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{Interval, TriangularFuzzy};
use crate::level::{DerivativeOrder, Domain, FuzzyFunction};
use crate::scalar::{cst, idx, Scalar};

/// `p̃(x) = ⊕_i c̃_i ⊙ xⁱ`; `coeffs[i]` multiplies `xⁱ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPolynomial<T> {
    coeffs: Vec<TriangularFuzzy<T>>,
    domain: Domain<T>,
}

impl<T: Scalar> FuzzyPolynomial<T> {
    pub fn new(coeffs: Vec<TriangularFuzzy<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Config(
                "a fuzzy polynomial needs at least one coefficient".into(),
            ));
        }
        Ok(Self {
            coeffs,
            domain: Domain::real_line(),
        })
    }

    pub fn with_domain(mut self, domain: Domain<T>) -> Self {
        self.domain = domain;
        self
    }

    pub fn coeffs(&self) -> &[TriangularFuzzy<T>] {
        &self.coeffs
    }

    /// Sums `c_i,α ⊙ w_i` where the sign of `xⁱ` picks which coefficient
    /// endpoint lands on which level endpoint, and `w_i` is `xⁱ` or one of
    /// its derivatives.
    fn combine(&self, x: T, alpha: T, weight: impl Fn(usize) -> T) -> (T, T) {
        let mut lo = T::zero();
        let mut hi = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let cut = c.cut_unchecked(alpha);
            let w = weight(i);
            if x.powi(i as i32) >= T::zero() {
                lo = lo + cut.lo() * w;
                hi = hi + cut.hi() * w;
            } else {
                lo = lo + cut.hi() * w;
                hi = hi + cut.lo() * w;
            }
        }
        (lo, hi)
    }
}

impl<T: Scalar> FuzzyFunction<T> for FuzzyPolynomial<T> {
    fn level(&self, x: T, alpha: T) -> (T, T) {
        self.combine(x, alpha, |i| x.powi(i as i32))
    }

    fn level_derivative(&self, x: T, alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        Some(match order {
            DerivativeOrder::First => self.combine(x, alpha, |i| {
                if i == 0 {
                    T::zero()
                } else {
                    idx::<T>(i) * x.powi(i as i32 - 1)
                }
            }),
            DerivativeOrder::Second => self.combine(x, alpha, |i| {
                if i < 2 {
                    T::zero()
                } else {
                    idx::<T>(i * (i - 1)) * x.powi(i as i32 - 2)
                }
            }),
        })
    }

    fn domain(&self) -> Domain<T> {
        self.domain
    }
}

/// `(0,1,2) ⊙ x³ ⊕ (1,2,3) ⊙ x²`; `F(x) = 2x³ + 4x²`.
pub fn cubic_example<T: Scalar>() -> FuzzyPolynomial<T> {
    let tri = |l: f64, p: f64, u: f64| TriangularFuzzy::new(cst(l), cst(p), cst(u)).unwrap();
    let zero = TriangularFuzzy::crisp(T::zero());
    FuzzyPolynomial::new(vec![zero, zero, tri(1.0, 2.0, 3.0), tri(0.0, 1.0, 2.0)]).unwrap()
}

const RETURN_SLOPE: f64 = 0.06667;
const RETURN_OFFSET: f64 = 1.1167;
const RISK_QUADRATIC: f64 = 0.1256;
const RISK_LINEAR: f64 = 0.1589;
const RISK_CONSTANT: f64 = 0.05139;

pub const DEFAULT_VA: f64 = 0.00168;
pub const DEFAULT_RHO: f64 = 1.0;
pub const DEFAULT_FUZZY_VA: [f64; 3] = [0.00167, 0.00168, 0.00172];
pub const DEFAULT_FUZZY_RHO: [f64; 3] = [0.5, 1.5, 3.5];

/// Risk model `c(x)` and the linear return part shared by both max-return variants.
#[derive(Debug, Clone, Copy)]
struct ReturnRisk<T> {
    slope: T,
    offset: T,
    quad: T,
    lin: T,
    constant: T,
}

impl<T: Scalar> ReturnRisk<T> {
    fn new() -> Self {
        Self {
            slope: cst(RETURN_SLOPE),
            offset: cst(RETURN_OFFSET),
            quad: cst(RISK_QUADRATIC),
            lin: cst(RISK_LINEAR),
            constant: cst(RISK_CONSTANT),
        }
    }

    fn linear(&self, x: T) -> T {
        -self.slope * x - self.offset
    }

    fn risk(&self, x: T) -> T {
        self.quad * x * x - self.lin * x + self.constant
    }

    fn risk_d1(&self, x: T) -> T {
        idx::<T>(2) * self.quad * x - self.lin
    }

    fn risk_d2(&self) -> T {
        idx::<T>(2) * self.quad
    }
}

/// `g(x) = -0.06667x - 1.1167 + (ρ/V_a²)(0.1256x² - 0.1589x + 0.05139 - V_a)²`,
/// lifted as a crisp fuzzy-valued function.
#[derive(Debug, Clone, Copy)]
pub struct MaxReturnCrisp<T> {
    va: T,
    rho: T,
    model: ReturnRisk<T>,
}

impl<T: Scalar> MaxReturnCrisp<T> {
    pub fn new(va: T, rho: T) -> Result<Self> {
        if !(va > T::zero() && va.is_finite()) {
            return Err(Error::Config(format!(
                "acceptable risk Va must be positive, got {va}"
            )));
        }
        if !(rho > T::zero() && rho.is_finite()) {
            return Err(Error::Config(format!(
                "weight rho must be positive, got {rho}"
            )));
        }
        Ok(Self {
            va,
            rho,
            model: ReturnRisk::new(),
        })
    }

    pub fn va(&self) -> T {
        self.va
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    fn weight(&self) -> T {
        self.rho / (self.va * self.va)
    }

    pub fn value(&self, x: T) -> T {
        let r = self.model.risk(x) - self.va;
        self.model.linear(x) + self.weight() * (r * r)
    }

    pub fn d1(&self, x: T) -> T {
        let r = self.model.risk(x) - self.va;
        -self.model.slope + idx::<T>(2) * self.weight() * r * self.model.risk_d1(x)
    }

    pub fn d2(&self, x: T) -> T {
        let r = self.model.risk(x) - self.va;
        let c1 = self.model.risk_d1(x);
        idx::<T>(2) * self.weight() * (c1 * c1 + r * self.model.risk_d2())
    }
}

impl<T: Scalar> FuzzyFunction<T> for MaxReturnCrisp<T> {
    fn level(&self, x: T, _alpha: T) -> (T, T) {
        let v = self.value(x);
        (v, v)
    }

    fn level_derivative(&self, x: T, _alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        let v = match order {
            DerivativeOrder::First => self.d1(x),
            DerivativeOrder::Second => self.d2(x),
        };
        Some((v, v))
    }
}

/// Fuzzy maximum-return objective with fuzzy acceptable risk `Ṽ_a` and weight `ρ̃`.
///
/// At each α the level is `linear(x) + k ⊗ r²` with the residual interval
/// `r = [c(x) - V^U, c(x) - V^L]`, its dependent square `r²`, and the weight
/// interval `k = [ρ^L/(V^U)², ρ^U/(V^L)²]`.
#[derive(Debug, Clone, Copy)]
pub struct MaxReturnFuzzy<T> {
    va: TriangularFuzzy<T>,
    rho: TriangularFuzzy<T>,
    model: ReturnRisk<T>,
}

/// Per-α pieces of the fuzzy objective.
struct FuzzyTerms<T> {
    linear: T,
    weight: Interval<T>,
    residual: Interval<T>,
}

impl<T: Scalar> MaxReturnFuzzy<T> {
    pub fn new(va: TriangularFuzzy<T>, rho: TriangularFuzzy<T>) -> Result<Self> {
        // cuts are nested, so checking the support covers every level
        if va.left() <= T::zero() {
            return Err(Error::SingularDivisor { alpha: 0.0 });
        }
        if rho.left() <= T::zero() {
            return Err(Error::Config(format!(
                "weight rho must be positive at every level, support starts at {}",
                rho.left()
            )));
        }
        Ok(Self {
            va,
            rho,
            model: ReturnRisk::new(),
        })
    }

    pub fn va(&self) -> TriangularFuzzy<T> {
        self.va
    }

    pub fn rho(&self) -> TriangularFuzzy<T> {
        self.rho
    }

    fn terms(&self, x: T, alpha: T) -> FuzzyTerms<T> {
        let v = self.va.cut_unchecked(alpha);
        let p = self.rho.cut_unchecked(alpha);
        let c = self.model.risk(x);
        FuzzyTerms {
            linear: self.model.linear(x),
            weight: Interval::raw(p.lo() / (v.hi() * v.hi()), p.hi() / (v.lo() * v.lo())),
            residual: Interval::raw(c - v.hi(), c - v.lo()),
        }
    }

    /// Residual endpoints selected by the lower and upper ends of `r²`
    /// (`None` for a lower end clamped at zero).
    fn square_branches(r: Interval<T>) -> (Option<T>, T) {
        let lower = if r.lo() >= T::zero() {
            Some(r.lo())
        } else if r.hi() <= T::zero() {
            Some(r.hi())
        } else {
            None
        };
        let upper = if r.lo().abs() >= r.hi().abs() {
            r.lo()
        } else {
            r.hi()
        };
        (lower, upper)
    }
}

impl<T: Scalar> FuzzyFunction<T> for MaxReturnFuzzy<T> {
    fn level(&self, x: T, alpha: T) -> (T, T) {
        let t = self.terms(x, alpha);
        let level = t.weight * t.residual.square() + t.linear;
        (level.lo(), level.hi())
    }

    // k and r² are both nonnegative, so the product's ends are k^L·(r²)^L and k^U·(r²)^U.
    fn level_derivative(&self, x: T, alpha: T, order: DerivativeOrder) -> Option<(T, T)> {
        let t = self.terms(x, alpha);
        let (lower, upper) = Self::square_branches(t.residual);
        let c1 = self.model.risk_d1(x);
        let two = idx::<T>(2);
        let piece = |r: T| match order {
            DerivativeOrder::First => two * r * c1,
            DerivativeOrder::Second => two * (c1 * c1 + r * self.model.risk_d2()),
        };
        let base = match order {
            DerivativeOrder::First => -self.model.slope,
            DerivativeOrder::Second => T::zero(),
        };
        let lo = base + t.weight.lo() * lower.map_or(T::zero(), piece);
        let hi = base + t.weight.hi() * piece(upper);
        Some((lo, hi))
    }
}

/// Names of the built-in problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Cubic,
    MaxReturnCrisp,
    MaxReturnFuzzy,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Self::Cubic, Self::MaxReturnCrisp, Self::MaxReturnFuzzy];

    pub fn name(self) -> &'static str {
        match self {
            Self::Cubic => "example_4_1",
            Self::MaxReturnCrisp => "max_return_crisp",
            Self::MaxReturnFuzzy => "max_return_fuzzy",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example_4_1" | "cubic" => Ok(Self::Cubic),
            "max_return_crisp" => Ok(Self::MaxReturnCrisp),
            "max_return_fuzzy" => Ok(Self::MaxReturnFuzzy),
            other => Err(Error::Config(format!("unknown problem '{other}'"))),
        }
    }
}

/// A parameter given either as a real number or a triangular triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Crisp(f64),
    Fuzzy(TriangularFuzzy<f64>),
}

impl ParamValue {
    pub fn as_triangular(self) -> TriangularFuzzy<f64> {
        match self {
            Self::Crisp(v) => TriangularFuzzy::crisp(v),
            Self::Fuzzy(t) => t,
        }
    }

    pub fn is_fuzzy(&self) -> bool {
        matches!(self, Self::Fuzzy(t) if !t.is_crisp())
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Crisp(v) => write!(f, "{v}"),
            Self::Fuzzy(t) => write!(f, "({},{},{})", t.left(), t.peak(), t.right()),
        }
    }
}

impl FromStr for ParamValue {
    type Err = Error;

    /// Accepts `0.5` or a triple `0.5,1.5,3.5` (optionally parenthesized).
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let parts: Vec<f64> = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("cannot parse parameter '{s}'")))
            })
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            [v] => Ok(Self::Crisp(*v)),
            [l, p, u] => Ok(Self::Fuzzy(TriangularFuzzy::new(*l, *p, *u)?)),
            _ => Err(Error::Config(format!(
                "parameter '{s}' must be a number or a triple l,p,u"
            ))),
        }
    }
}

/// `{Va, rho}` for the maximum-return problems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxReturnParams {
    #[serde(rename = "Va")]
    pub va: ParamValue,
    pub rho: ParamValue,
}

impl MaxReturnParams {
    pub fn crisp_default() -> Self {
        Self {
            va: ParamValue::Crisp(DEFAULT_VA),
            rho: ParamValue::Crisp(DEFAULT_RHO),
        }
    }

    pub fn fuzzy_default() -> Self {
        let [l, p, u] = DEFAULT_FUZZY_VA;
        let [rl, rp, ru] = DEFAULT_FUZZY_RHO;
        Self {
            va: ParamValue::Fuzzy(TriangularFuzzy::new(l, p, u).unwrap()),
            rho: ParamValue::Fuzzy(TriangularFuzzy::new(rl, rp, ru).unwrap()),
        }
    }

    pub fn is_fuzzy(&self) -> bool {
        self.va.is_fuzzy() || self.rho.is_fuzzy()
    }

    pub fn crisp<T: Scalar>(&self) -> Result<MaxReturnCrisp<T>> {
        match (self.va, self.rho) {
            (ParamValue::Crisp(va), ParamValue::Crisp(rho)) => {
                MaxReturnCrisp::new(cst(va), cst(rho))
            }
            _ if !self.is_fuzzy() => MaxReturnCrisp::new(
                cst(self.va.as_triangular().peak()),
                cst(self.rho.as_triangular().peak()),
            ),
            _ => Err(Error::Config(
                "max_return_crisp takes real Va and rho; use max_return_fuzzy for triples".into(),
            )),
        }
    }

    pub fn fuzzy<T: Scalar>(&self) -> Result<MaxReturnFuzzy<T>> {
        let conv = |t: TriangularFuzzy<f64>| {
            TriangularFuzzy::new(cst::<T>(t.left()), cst(t.peak()), cst(t.right()))
        };
        MaxReturnFuzzy::new(
            conv(self.va.as_triangular())?,
            conv(self.rho.as_triangular())?,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    #[default]
    Minimize,
    Maximize,
}

/// Domain bounds in a problem file; a missing bound is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DomainSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
}

impl DomainSpec {
    pub fn to_domain<T: Scalar>(self) -> Result<Domain<T>> {
        Domain::new(
            self.lo.map_or_else(T::neg_infinity, cst),
            self.hi.map_or_else(T::infinity, cst),
        )
    }
}

/// Declarative problem definition plus the solver settings stored with it.
///
/// `kind` is a built-in name or `fuzzy_polynomial`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<TriangularFuzzy<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<MaxReturnParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sense: Option<Sense>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_points: Option<usize>,
}

pub const POLYNOMIAL_KIND: &str = "fuzzy_polynomial";

impl ProblemSpec {
    pub fn builtin(b: Builtin) -> Self {
        Self {
            kind: b.name().to_string(),
            coefficients: None,
            params: None,
            domain: None,
            sense: None,
            x0: None,
            eps: None,
            alpha_points: None,
        }
    }

    pub fn polynomial(coefficients: Vec<TriangularFuzzy<f64>>) -> Self {
        Self {
            kind: POLYNOMIAL_KIND.to_string(),
            coefficients: Some(coefficients),
            ..Self::builtin(Builtin::Cubic)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("problem file: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem spec serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == POLYNOMIAL_KIND {
            match &self.coefficients {
                Some(c) if !c.is_empty() => {}
                _ => {
                    return Err(Error::Config(
                        "fuzzy_polynomial needs at least one coefficient".into(),
                    ))
                }
            }
        } else {
            self.kind.parse::<Builtin>()?;
        }
        if let Some(d) = self.domain {
            d.to_domain::<f64>()?;
        }
        Ok(())
    }

    /// The built-in this spec names, `None` for a fuzzy polynomial.
    pub fn builtin_kind(&self) -> Result<Option<Builtin>> {
        if self.kind == POLYNOMIAL_KIND {
            Ok(None)
        } else {
            self.kind.parse().map(Some)
        }
    }

    pub fn build<T: Scalar>(&self) -> Result<Box<dyn FuzzyFunction<T>>> {
        self.validate()?;
        let f: Box<dyn FuzzyFunction<T>> = match self.builtin_kind()? {
            Some(Builtin::Cubic) => Box::new(cubic_example::<T>()),
            Some(Builtin::MaxReturnCrisp) => Box::new(
                self.params
                    .unwrap_or_else(MaxReturnParams::crisp_default)
                    .crisp::<T>()?,
            ),
            Some(Builtin::MaxReturnFuzzy) => Box::new(
                self.params
                    .unwrap_or_else(MaxReturnParams::fuzzy_default)
                    .fuzzy::<T>()?,
            ),
            None => {
                let coeffs = self
                    .coefficients
                    .iter()
                    .flatten()
                    .map(|c| {
                        TriangularFuzzy::new(cst::<T>(c.left()), cst(c.peak()), cst(c.right()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let domain = self.domain.unwrap_or_default().to_domain()?;
                Box::new(FuzzyPolynomial::new(coeffs)?.with_domain(domain))
            }
        };
        Ok(f)
    }

    /// Bracket in which the scalarized objective's minimizer near the default
    /// start is searched by the grid oracle.
    pub fn bracket(&self) -> Option<(f64, f64)> {
        match self.builtin_kind().ok()?? {
            Builtin::Cubic => Some((-0.5, 0.5)),
            Builtin::MaxReturnCrisp | Builtin::MaxReturnFuzzy => Some((0.65, 0.75)),
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.params {
            Some(p) => write!(f, "{} (Va={}, rho={})", self.kind, p.va, p.rho),
            None => f.write_str(&self.kind),
        }
    }
}
