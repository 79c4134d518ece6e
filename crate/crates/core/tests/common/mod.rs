//! Shared pieces for the integration tests: hand-written reference models
//! that do not go through the library, proptest strategies, and property
//! bodies used both by `properties.rs` and by the acceptance run.
#![allow(dead_code)]

use fuzzy_newton::level::DerivativeOrder;
use fuzzy_newton::problems::FuzzyPolynomial;
use fuzzy_newton::{
    centroid, scalarize, scalarize_d1, scalarize_d2, Builtin, FuzzyFunction, FuzzyNumberF64,
    HukuharaDiff, IntervalF64, LevelFn, Negated, ProblemSpec, ScalarizationConfig, TriangularF64,
};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

/// Grid size used by the randomized suites.
pub const M: usize = 21;

pub fn line(criterion: u32, pass: bool, what: &str, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion} [{verdict}] {what}: {detail}");
}

// ---------------------------------------------------------------------------
// Reference models
// ---------------------------------------------------------------------------

/// `F(x) = 2x³ + 4x²` for the fuzzy cubic.
pub fn cubic_big_f(x: f64) -> f64 {
    2.0 * x.powi(3) + 4.0 * x * x
}

/// Newton on `F' = 6x² + 8x`, `F'' = 12x + 8`.
pub fn cubic_newton(x0: f64, steps: usize) -> Vec<f64> {
    let mut xs = vec![x0];
    for _ in 0..steps {
        let x = *xs.last().unwrap();
        xs.push(x - (6.0 * x * x + 8.0 * x) / (12.0 * x + 8.0));
    }
    xs
}

fn risk(x: f64) -> f64 {
    0.1256 * x * x - 0.1589 * x + 0.05139
}

/// Crisp maximum-return objective `g`.
pub fn crisp_g(x: f64, va: f64, rho: f64) -> f64 {
    let r = risk(x) - va;
    -0.06667 * x - 1.1167 + rho / (va * va) * r * r
}

fn tri_cut(t: [f64; 3], alpha: f64) -> (f64, f64) {
    (t[0] + alpha * (t[1] - t[0]), t[2] - alpha * (t[2] - t[1]))
}

/// Level endpoints of the fuzzy maximum-return objective, written out
/// directly from the residual and weight intervals.
pub fn fuzzy_levels(x: f64, alpha: f64, va: [f64; 3], rho: [f64; 3]) -> (f64, f64) {
    let (vl, vu) = tri_cut(va, alpha);
    let (pl, pu) = tri_cut(rho, alpha);
    let (kl, ku) = (pl / (vu * vu), pu / (vl * vl));
    let c = risk(x);
    let (rl, ru) = (c - vu, c - vl);
    let sq_lo = if rl >= 0.0 {
        rl * rl
    } else if ru <= 0.0 {
        ru * ru
    } else {
        0.0
    };
    let sq_hi = (rl * rl).max(ru * ru);
    let lin = -0.06667 * x - 1.1167;
    (lin + kl * sq_lo, lin + ku * sq_hi)
}

/// Composite Simpson on `n` (odd) equally spaced samples of [0, 1].
pub fn simpson01(n: usize, f: impl Fn(f64) -> f64) -> f64 {
    assert!(n >= 3 && n % 2 == 1);
    let h = 1.0 / (n - 1) as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..n - 1 {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(i as f64 * h);
    }
    s * h / 3.0
}

pub fn fuzzy_big_f(x: f64, va: [f64; 3], rho: [f64; 3], n: usize) -> f64 {
    simpson01(n, |a| {
        let (l, u) = fuzzy_levels(x, a, va, rho);
        l + u
    })
}

/// Centroid of level endpoints given as closures of α, by Simpson.
pub fn level_centroid(n: usize, lo: impl Fn(f64) -> f64, hi: impl Fn(f64) -> f64) -> f64 {
    let num = simpson01(n, |a| (hi(a).powi(2) - lo(a).powi(2)) / 2.0);
    let den = simpson01(n, |a| hi(a) - lo(a));
    num / den
}

/// Smallest sample of `f` on `lo, lo + step, …, hi`.
pub fn grid_argmin(lo: f64, hi: f64, step: f64, f: impl Fn(f64) -> f64) -> f64 {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n)
        .map(|i| lo + i as f64 * step)
        .map(|x| (x, f(x)))
        .fold((f64::NAN, f64::INFINITY), |best, (x, v)| {
            if v < best.1 {
                (x, v)
            } else {
                best
            }
        })
        .0
}

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

fn nested(core_lo: f64, core_w: f64, dl: &[f64], du: &[f64]) -> FuzzyNumberF64 {
    let mut lo = vec![0.0; M];
    let mut hi = vec![0.0; M];
    lo[M - 1] = core_lo;
    hi[M - 1] = core_lo + core_w;
    for i in (0..M - 1).rev() {
        lo[i] = lo[i + 1] - dl[i];
        hi[i] = hi[i + 1] + du[i];
    }
    let levels = lo
        .into_iter()
        .zip(hi)
        .map(|(l, h)| IntervalF64::new(l, h).unwrap())
        .collect();
    FuzzyNumberF64::from_levels(levels).unwrap()
}

pub fn arb_triangular() -> impl Strategy<Value = TriangularF64> {
    (-10.0..10.0f64, 0.0..3.0f64, 0.0..3.0f64)
        .prop_map(|(p, dl, du)| TriangularF64::new(p - dl, p, p + du).unwrap())
}

/// Arbitrary nested levels, with triangular shapes mixed in.
pub fn arb_fuzzy() -> impl Strategy<Value = FuzzyNumberF64> {
    prop_oneof![
        (
            -10.0..10.0f64,
            0.0..2.0f64,
            vec(0.0..0.5f64, M - 1),
            vec(0.0..0.5f64, M - 1)
        )
            .prop_map(|(c, w, dl, du)| nested(c, w, &dl, &du)),
        arb_triangular().prop_map(|t| t.discretize(M).unwrap()),
        (-10.0..10.0f64).prop_map(|v| FuzzyNumberF64::crisp(v, M).unwrap()),
    ]
}

/// Fuzzy numbers whose support lies in [0, ∞).
pub fn arb_nonneg_fuzzy() -> impl Strategy<Value = FuzzyNumberF64> {
    arb_fuzzy().prop_map(|a| {
        let shift = FuzzyNumberF64::crisp(-a.support().lo(), M).unwrap();
        a.try_add(&shift).unwrap()
    })
}

/// Fuzzy numbers whose support avoids a neighborhood of zero.
pub fn arb_nonzero_fuzzy() -> impl Strategy<Value = FuzzyNumberF64> {
    (arb_nonneg_fuzzy(), 0.1..5.0f64, any::<bool>()).prop_map(|(a, gap, negative)| {
        let b = a.try_add(&FuzzyNumberF64::crisp(gap, M).unwrap()).unwrap();
        if negative {
            b.neg()
        } else {
            b
        }
    })
}

pub fn arb_poly_coeffs() -> impl Strategy<Value = Vec<TriangularF64>> {
    vec(
        (-3.0..3.0f64, 0.0..1.0f64, 0.0..1.0f64)
            .prop_map(|(p, dl, du)| TriangularF64::new(p - dl, p, p + du).unwrap()),
        1..5,
    )
}

// ---------------------------------------------------------------------------
// Property bodies
// ---------------------------------------------------------------------------

fn valid(a: &FuzzyNumberF64) -> bool {
    FuzzyNumberF64::from_levels(a.levels().to_vec()).is_ok()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

pub fn ops_preserve_invariants(
    a: FuzzyNumberF64,
    b: FuzzyNumberF64,
    d: FuzzyNumberF64,
    lambda: f64,
) -> Result<(), TestCaseError> {
    let mut results = vec![
        ("add", a.try_add(&b).unwrap()),
        ("mul", a.try_mul(&b).unwrap()),
        ("scale", a.scale(lambda)),
        ("neg", a.neg()),
        ("square", a.square()),
        ("div", a.try_div(&d).unwrap()),
        ("recip", d.recip().unwrap()),
    ];
    if let HukuharaDiff::Exists(c) = a.hukuhara_diff(&b).unwrap() {
        results.push(("hukuhara", c));
    }
    for (name, r) in &results {
        prop_assert_eq!(r.grid_size(), M, "{} changed the grid", name);
        prop_assert!(valid(r), "{} produced invalid levels", name);
    }
    Ok(())
}

pub fn order_axioms(
    a: FuzzyNumberF64,
    b: FuzzyNumberF64,
    c: FuzzyNumberF64,
    d: FuzzyNumberF64,
) -> Result<(), TestCaseError> {
    prop_assert!(a.leq(&a).unwrap());
    // adding a nonnegative fuzzy number moves every endpoint up
    let ac = a.try_add(&c).unwrap();
    let acd = ac.try_add(&d).unwrap();
    prop_assert!(a.leq(&ac).unwrap());
    prop_assert!(ac.leq(&acd).unwrap());
    prop_assert!(a.leq(&acd).unwrap());
    for (x, y) in [(&a, &b), (&a, &ac)] {
        if x.leq(y).unwrap() && y.leq(x).unwrap() {
            prop_assert!(x.distance(y).unwrap() == 0.0);
        }
        if x.leq(y).unwrap() && y.leq(&acd).unwrap() {
            prop_assert!(x.leq(&acd).unwrap());
        }
        prop_assert_eq!(
            x.comparable(y).unwrap(),
            x.leq(y).unwrap() || y.leq(x).unwrap()
        );
    }
    Ok(())
}

pub fn metric_axioms(
    a: FuzzyNumberF64,
    b: FuzzyNumberF64,
    c: FuzzyNumberF64,
) -> Result<(), TestCaseError> {
    let d = |x: &FuzzyNumberF64, y: &FuzzyNumberF64| x.distance(y).unwrap();
    prop_assert_eq!(d(&a, &a), 0.0);
    prop_assert!(d(&a, &b) >= 0.0);
    prop_assert_eq!(d(&a, &b), d(&b, &a));
    prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
    if a.levels() != b.levels() {
        prop_assert!(d(&a, &b) > 0.0);
    }
    Ok(())
}

pub fn hukuhara_roundtrip(a: FuzzyNumberF64, b: FuzzyNumberF64) -> Result<(), TestCaseError> {
    let check = |minuend: &FuzzyNumberF64, c: &FuzzyNumberF64| -> Result<(), TestCaseError> {
        let back = c.try_add(&b).unwrap();
        let scale = minuend
            .support()
            .lo()
            .abs()
            .max(minuend.support().hi().abs())
            .max(1.0);
        prop_assert!(
            back.distance(minuend).unwrap() <= 1e-12 * scale,
            "roundtrip off by {}",
            back.distance(minuend).unwrap()
        );
        Ok(())
    };
    // a ⊕ b always has b as a Hukuhara summand
    let sum = a.try_add(&b).unwrap();
    match sum.hukuhara_diff(&b).unwrap() {
        HukuharaDiff::Exists(c) => check(&sum, &c)?,
        HukuharaDiff::Nonexistent { alpha, reason } => {
            return Err(TestCaseError::fail(format!(
                "difference of a sum missing at alpha {alpha}: {reason}"
            )))
        }
    }
    if let HukuharaDiff::Exists(c) = a.hukuhara_diff(&b).unwrap() {
        check(&a, &c)?;
    }
    Ok(())
}

pub fn square_within_product(a: FuzzyNumberF64) -> Result<(), TestCaseError> {
    let sq = a.square();
    let prod = a.try_mul(&a).unwrap();
    for i in 0..M {
        prop_assert!(
            prod.level(i).encloses(&sq.level(i)),
            "level {}: {:?} not inside {:?}",
            i,
            sq.level(i),
            prod.level(i)
        );
        prop_assert!(sq.level(i).lo() >= 0.0);
    }
    Ok(())
}

pub fn negation_antisymmetry(coeffs: Vec<TriangularF64>, x: f64) -> Result<(), TestCaseError> {
    let cfg = ScalarizationConfig::default();
    let p = FuzzyPolynomial::new(coeffs).unwrap();
    let neg = Negated(p.clone());
    let fp = scalarize(&p, x, &cfg).unwrap();
    let fn_ = scalarize(&neg, x, &cfg).unwrap();
    prop_assert!(close(fn_, -fp, 1e-12), "{} vs {}", fn_, -fp);
    let d1 = scalarize_d1(&p, x, &cfg).unwrap();
    let nd1 = scalarize_d1(&neg, x, &cfg).unwrap();
    prop_assert!(close(nd1, -d1, 1e-12));
    Ok(())
}

/// `F = 2g`, `F' = 2g'`, `F'' = 2g''` for crisp objectives, both through
/// crisp polynomial coefficients (analytic derivatives) and a bare closure
/// (finite differences).
pub fn crisp_collapse(a: [f64; 4], x: f64) -> Result<(), TestCaseError> {
    let g = move |t: f64| a[0] + a[1] * t + a[2] * t * t + a[3] * t * t * t;
    let g1 = a[1] + 2.0 * a[2] * x + 3.0 * a[3] * x * x;
    let g2 = 2.0 * a[2] + 6.0 * a[3] * x;
    let cfg = ScalarizationConfig::default();

    let p = FuzzyPolynomial::new(a.iter().map(|&c| TriangularF64::crisp(c)).collect()).unwrap();
    prop_assert!(close(scalarize(&p, x, &cfg).unwrap(), 2.0 * g(x), 1e-12));
    prop_assert!(close(scalarize_d1(&p, x, &cfg).unwrap(), 2.0 * g1, 1e-12));
    prop_assert!(close(scalarize_d2(&p, x, &cfg).unwrap(), 2.0 * g2, 1e-12));

    let closure = LevelFn::crisp(g);
    prop_assert!(close(
        scalarize(&closure, x, &cfg).unwrap(),
        2.0 * g(x),
        1e-12
    ));
    let fd1 = scalarize_d1(&closure, x, &cfg).unwrap();
    prop_assert!(close(fd1, 2.0 * g1, 1e-6), "F' {} vs {}", fd1, 2.0 * g1);
    Ok(())
}

/// Hides a function's analytic derivatives so the finite-difference path runs.
pub struct LevelsOnly<'a>(pub &'a dyn FuzzyFunction<f64>);

impl FuzzyFunction<f64> for LevelsOnly<'_> {
    fn level(&self, x: f64, alpha: f64) -> (f64, f64) {
        self.0.level(x, alpha)
    }
}

/// True when some level of the fuzzy max-return objective switches branch
/// within a few finite-difference steps of `x`.
pub fn near_kink(x: f64) -> bool {
    let band = (0.00167 - 1e-4, 0.00172 + 1e-4);
    (-2..=2).any(|k| {
        let c = risk(x + k as f64 * 1e-4);
        c > band.0 && c < band.1
    })
}

/// Finite-difference and analytic `F'`, `F''` agree within 1e-5 relative
/// (relative to `max(|analytic|, 1)`).
///
/// `F'` uses the default step. The second difference loses about
/// `eps·|F|/h²` to cancellation, which is near 1e-5 at the default step, so
/// `F''` is compared at a step of 4e-5. For the max-return problems, whose
/// curvature is scaled by `ρ/V_a² > 10⁵`, values of `|F''|` below 10 count as
/// near zero and are skipped.
pub fn fd_matches_analytic(which: usize, x: f64) -> Result<(), TestCaseError> {
    let builtin = Builtin::ALL[which];
    if builtin == Builtin::MaxReturnFuzzy && near_kink(x) {
        return Ok(());
    }
    let f = ProblemSpec::builtin(builtin).build::<f64>().unwrap();
    let fd = LevelsOnly(&*f);
    for (order, step) in [
        (DerivativeOrder::First, 1e-5),
        (DerivativeOrder::Second, 4e-5),
    ] {
        let cfg = ScalarizationConfig {
            fd_step: step,
            ..ScalarizationConfig::default()
        };
        let exact = fuzzy_newton::scalarize_derivative(&*f, x, &cfg, order)
            .unwrap()
            .value;
        if order == DerivativeOrder::Second && builtin != Builtin::Cubic && exact.abs() < 10.0 {
            continue;
        }
        let approx = fuzzy_newton::scalarize_derivative(&fd, x, &cfg, order)
            .unwrap()
            .value;
        prop_assert!(
            (exact - approx).abs() <= 1e-5 * exact.abs().max(1.0),
            "{:?} {:?} at {}: analytic {} fd {}",
            builtin,
            order,
            x,
            exact,
            approx
        );
    }
    Ok(())
}

pub fn centroid_equivariance(
    a: FuzzyNumberF64,
    shift: f64,
    lambda: f64,
) -> Result<(), TestCaseError> {
    let c = centroid(&a);
    let moved = a
        .try_add(&FuzzyNumberF64::crisp(shift, M).unwrap())
        .unwrap();
    prop_assert!(close(centroid(&moved), c + shift, 1e-9));
    prop_assert!(close(centroid(&a.scale(lambda)), lambda * c, 1e-9));
    Ok(())
}

// ---------------------------------------------------------------------------
// Suite runner for the acceptance check
// ---------------------------------------------------------------------------

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    };
    let mut runner = TestRunner::new(config);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every invariant suite, each run for `cases` random inputs.
pub fn all_suites(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "arithmetic keeps valid levels",
            run(
                cases,
                (arb_fuzzy(), arb_fuzzy(), arb_nonzero_fuzzy(), -5.0..5.0f64),
                |(a, b, d, l)| ops_preserve_invariants(a, b, d, l),
            ),
        ),
        (
            "partial order axioms",
            run(
                cases,
                (
                    arb_fuzzy(),
                    arb_fuzzy(),
                    arb_nonneg_fuzzy(),
                    arb_nonneg_fuzzy(),
                ),
                |(a, b, c, d)| order_axioms(a, b, c, d),
            ),
        ),
        (
            "metric axioms",
            run(
                cases,
                (arb_fuzzy(), arb_fuzzy(), arb_fuzzy()),
                |(a, b, c)| metric_axioms(a, b, c),
            ),
        ),
        (
            "hukuhara roundtrip",
            run(cases, (arb_fuzzy(), arb_fuzzy()), |(a, b)| {
                hukuhara_roundtrip(a, b)
            }),
        ),
        (
            "square inside product",
            run(cases, arb_fuzzy(), square_within_product),
        ),
        (
            "negation antisymmetry",
            run(cases, (arb_poly_coeffs(), -3.0..3.0f64), |(c, x)| {
                negation_antisymmetry(c, x)
            }),
        ),
        (
            "crisp collapse",
            run(
                cases,
                (proptest::array::uniform4(-5.0..5.0f64), -3.0..3.0f64),
                |(a, x)| crisp_collapse(a, x),
            ),
        ),
        (
            "finite differences match analytic derivatives",
            run(cases, (0..3usize, -1.0..2.0f64), |(w, x)| {
                fd_matches_analytic(w, x)
            }),
        ),
    ]
}
