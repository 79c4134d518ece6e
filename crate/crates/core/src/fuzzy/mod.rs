//! Fuzzy numbers on a uniform α-grid and their level-wise arithmetic.

mod interval;
mod number;
mod triangular;

pub use interval::Interval;
pub(crate) use number::grid_alpha;
pub use number::{FuzzyNumber, HukuharaDiff};
pub use triangular::TriangularFuzzy;
