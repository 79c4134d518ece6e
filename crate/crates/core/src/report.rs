//! Run reports and their text, CSV and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fuzzy::FuzzyNumber;
use crate::newton::{NewtonConfig, SolveStatus, StationarityKind, VerificationReport};
use crate::problems::{ParamValue, ProblemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// One row of the iteration table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub k: usize,
    pub x: f64,
    pub x_next: Option<f64>,
    #[serde(rename = "F")]
    pub value: f64,
    #[serde(rename = "dF")]
    pub d1: f64,
    #[serde(rename = "d2F")]
    pub d2: f64,
    /// `f̃(x_k)` as (0-level lo, 1-level midpoint, 0-level hi).
    pub fuzzy_value: [f64; 3],
}

pub(crate) fn triple(a: &FuzzyNumber<f64>) -> [f64; 3] {
    [a.support().lo(), a.core().midpoint(), a.support().hi()]
}

/// Everything needed to rerun a solve exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub solver: NewtonConfig<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub status: SolveStatus,
    pub iterations: usize,
    pub xstar: f64,
    pub stationarity_kind: StationarityKind,
    /// Scalarized `F(x*)`.
    #[serde(rename = "F_xstar")]
    pub scalarized: Option<f64>,
    /// `F(x*)/2`, the level-averaged objective (equal to `g(x*)` for crisp problems).
    pub objective: Option<f64>,
    /// Centroid of `f̃(x*)`.
    pub defuzzified: Option<f64>,
    pub value_at_xstar: Option<FuzzyNumber<f64>>,
    pub trace: Vec<TraceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub config: RunConfig,
    pub result: SolveSummary,
    pub verification: Option<VerificationReport<f64>>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "Va")]
    pub va: ParamValue,
    pub rho: ParamValue,
    pub status: SolveStatus,
    pub iterations: usize,
    pub xstar: f64,
    /// Defuzzified `f̃(x*)`; the plain objective value for crisp rows.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub problem: String,
    pub config: RunConfig,
    pub verification: VerificationReport<f64>,
    pub passed: bool,
}

/// Six significant digits.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-3..6).contains(&mag) {
        format!("{:.*}", (5 - mag) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

fn opt(v: Option<f64>, f: impl Fn(f64) -> String) -> String {
    v.map_or_else(String::new, f)
}

/// Shortest text that parses back to the same `f64`, switching to
/// exponent form for very small and very large magnitudes.
fn full(v: f64) -> String {
    format!("{v:?}")
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn status_line(r: &SolveSummary) -> String {
    format!(
        "status: {} after {} iteration(s), stationary point kind: {}",
        r.status.as_str(),
        r.iterations,
        match r.stationarity_kind {
            StationarityKind::LocalMin => "local-min",
            StationarityKind::LocalMax => "local-max",
            StationarityKind::Inconclusive => "inconclusive",
        }
    )
}

fn verification_text(out: &mut String, v: &VerificationReport<f64>) {
    let nd = match v.non_dominance {
        crate::level::NonDominance::NoDominatorFound { samples } => {
            format!("no dominator found ({samples} samples)")
        }
        crate::level::NonDominance::DominatedBy { x1, samples } => {
            format!("dominated by x1 = {} ({samples} samples)", sig6(x1))
        }
    };
    let cmp = |c: &crate::level::ComparabilityVerdict<f64>| match c.witness {
        None => format!("comparable ({} samples)", c.samples),
        Some(l) => format!("incomparable at lambda = {}", sig6(l)),
    };
    let _ = writeln!(
        out,
        "|F'(x*)| = {} (tolerance {}) -> {}",
        sig6(v.d1.abs()),
        sig6(v.stationarity_tol),
        if v.stationary {
            "stationary"
        } else {
            "not stationary"
        }
    );
    let _ = writeln!(out, "F''(x*) = {}", sig6(v.d2));
    let _ = writeln!(
        out,
        "max level slopes: lower {}, upper {}",
        sig6(v.level_slope_max_lo),
        sig6(v.level_slope_max_hi)
    );
    let _ = writeln!(out, "non-dominance: {nd}");
    let _ = writeln!(
        out,
        "comparability: forward {}, backward {}",
        cmp(&v.comparability_forward),
        cmp(&v.comparability_backward)
    );
}

pub const TRACE_HEADER: [&str; 9] = [
    "k",
    "x_k",
    "x_next",
    "F",
    "dF",
    "d2F",
    "support_lo",
    "core",
    "support_hi",
];

pub fn render_run(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut s = TRACE_HEADER.join(",");
            s.push('\n');
            for t in &r.result.trace {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    t.k,
                    full(t.x),
                    opt(t.x_next, full),
                    full(t.value),
                    full(t.d1),
                    full(t.d2),
                    full(t.fuzzy_value[0]),
                    full(t.fuzzy_value[1]),
                    full(t.fuzzy_value[2])
                );
            }
            s.push('\n');
            s.push_str("status,iterations,xstar,F_xstar,objective,defuzzified\n");
            let res = &r.result;
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                res.status.as_str(),
                res.iterations,
                full(res.xstar),
                opt(res.scalarized, full),
                opt(res.objective, full),
                opt(res.defuzzified, full)
            );
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "problem: {}", r.problem);
            let _ = writeln!(
                s,
                "{:>4}  {:>13}  {:>13}  {:>13}  {:>13}  {:>13}",
                "k", "x(k)", "x(k+1)", "f(x(k)) lo", "core", "hi"
            );
            for t in &r.result.trace {
                let _ = writeln!(
                    s,
                    "{:>4}  {:>13}  {:>13}  {:>13}  {:>13}  {:>13}",
                    t.k,
                    sig6(t.x),
                    opt(t.x_next, sig6),
                    sig6(t.fuzzy_value[0]),
                    sig6(t.fuzzy_value[1]),
                    sig6(t.fuzzy_value[2])
                );
            }
            let res = &r.result;
            let _ = writeln!(s, "{}", status_line(res));
            let _ = writeln!(
                s,
                "x* = {}  F(x*) = {}  objective = {}  defuzzified = {}",
                sig6(res.xstar),
                opt(res.scalarized, sig6),
                opt(res.objective, sig6),
                opt(res.defuzzified, sig6)
            );
            if let Some(v) = &r.verification {
                verification_text(&mut s, v);
            }
            s
        }
    }
}

pub fn render_table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from("Va,rho,status,iterations,xstar,value\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "\"{}\",\"{}\",{},{},{},{}",
                    r.va,
                    r.rho,
                    r.status.as_str(),
                    r.iterations,
                    full(r.xstar),
                    opt(r.value, full)
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>28}  {:>18}  {:>13}  {:>13}  {}\n",
                "Va", "rho", "x*", "value", "status"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:>28}  {:>18}  {:>13}  {:>13}  {}",
                    r.va.to_string(),
                    r.rho.to_string(),
                    sig6(r.xstar),
                    opt(r.value, sig6),
                    r.status.as_str()
                );
            }
            s
        }
    }
}

pub fn render_check(c: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => to_json(c),
        Format::Csv => {
            let v = &c.verification;
            let mut s = String::from(
                "xstar,dF,d2F,stationarity_tol,stationary,level_slope_max_lo,level_slope_max_hi,non_dominated,comparable_forward,comparable_backward,passed\n",
            );
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{}",
                full(v.xstar),
                full(v.d1),
                full(v.d2),
                full(v.stationarity_tol),
                v.stationary,
                full(v.level_slope_max_lo),
                full(v.level_slope_max_hi),
                v.non_dominance.is_non_dominated(),
                v.comparability_forward.comparable,
                v.comparability_backward.comparable,
                c.passed
            );
            s
        }
        Format::Text => {
            let mut s = format!(
                "problem: {}\nx* = {}\n",
                c.problem,
                sig6(c.verification.xstar)
            );
            verification_text(&mut s, &c.verification);
            let _ = writeln!(s, "verdict: {}", if c.passed { "pass" } else { "fail" });
            s
        }
    }
}
