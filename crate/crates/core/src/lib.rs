//! Fuzzy-number arithmetic on α-levels and a scalarized Newton method for
//! unconstrained single-variable fuzzy optimization.
//!
//! A fuzzy-valued objective `f̃(x)` is reduced to the real function
//! `F(x) = ∫₀¹ (f_α^L(x) + f_α^U(x)) dα` and Newton's iteration
//! `x_{k+1} = x_k - F'(x_k)/F''(x_k)` is run on it. Everything numeric is
//! generic over [`Scalar`] (`f32` or `f64`); the `*F64` aliases below fix the
//! common double-precision case.

pub mod cli;
pub mod defuzzify;
pub mod error;
pub mod fuzzy;
pub mod level;
pub mod newton;
pub mod problems;
pub mod quadrature;
pub mod report;
mod scalar;

pub use defuzzify::centroid;
pub use error::{Error, Result};
pub use fuzzy::{FuzzyNumber, HukuharaDiff, Interval, TriangularFuzzy};
pub use level::{
    comparability_check, eval_fuzzy, non_dominance_check, scalarize, scalarize_d1, scalarize_d2,
    scalarize_derivative, Direction, Domain, FuzzyFunction, LevelFn, Negated, NonDominance,
    ScalarizationConfig,
};
pub use newton::{
    estimate_convergence_order, estimate_order_from_iterates, solve, verify_point, verify_solution,
    CheckConfig, ConvergenceOrder, IterationRecord, NewtonConfig, SolveResult, SolveStatus,
    StationarityKind, VerificationReport,
};
pub use problems::{Builtin, MaxReturnCrisp, MaxReturnFuzzy, MaxReturnParams, ProblemSpec};
pub use quadrature::Quadrature;
pub use scalar::{cst, Scalar};

pub type IntervalF64 = Interval<f64>;
pub type TriangularF64 = TriangularFuzzy<f64>;
pub type FuzzyNumberF64 = FuzzyNumber<f64>;
pub type NewtonConfigF64 = NewtonConfig<f64>;
pub type SolveResultF64 = SolveResult<f64>;

pub type IntervalF32 = Interval<f32>;
pub type TriangularF32 = TriangularFuzzy<f32>;
pub type FuzzyNumberF32 = FuzzyNumber<f32>;
pub type NewtonConfigF32 = NewtonConfig<f32>;
pub type SolveResultF32 = SolveResult<f32>;
