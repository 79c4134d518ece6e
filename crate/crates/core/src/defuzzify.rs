//! Centroid defuzzification from the α-level representation.

use crate::fuzzy::FuzzyNumber;
use crate::quadrature::Quadrature;
use crate::scalar::{cst, idx, Scalar};

/// Membership-weighted mean `∫x·μ(x)dx / ∫μ(x)dx`, written through the levels as
/// `∫₀¹ (U_α² - L_α²)/2 dα / ∫₀¹ (U_α - L_α) dα`.
///
/// Integrates on the number's own grid (Simpson when the grid size is odd,
/// trapezoid otherwise). A crisp number (zero area) returns the midpoint of
/// its α = 1 level.
pub fn centroid<T: Scalar>(a: &FuzzyNumber<T>) -> T {
    let rule = Quadrature::best_for(a.grid_size());
    let weights = rule
        .weights::<T>(a.grid_size())
        .expect("fuzzy numbers have at least two levels");
    let two = idx::<T>(2);
    let (num, den) =
        weights
            .iter()
            .zip(a.levels())
            .fold((T::zero(), T::zero()), |(n, d), (&w, lv)| {
                let width = lv.width();
                (n + w * width * (lv.hi() + lv.lo()) / two, d + w * width)
            });
    if den < cst(1e-14) {
        a.core().midpoint()
    } else {
        num / den
    }
}
