mod common;

use common::*;
use fuzzy_newton::problems::FuzzyPolynomial;
use fuzzy_newton::{centroid, scalarize, FuzzyNumberF64, LevelFn, ScalarizationConfig};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn arithmetic_keeps_valid_levels(
        a in arb_fuzzy(),
        b in arb_fuzzy(),
        d in arb_nonzero_fuzzy(),
        lambda in -5.0..5.0f64,
    ) {
        ops_preserve_invariants(a, b, d, lambda)?;
    }

    #[test]
    fn leq_is_a_partial_order(
        a in arb_fuzzy(),
        b in arb_fuzzy(),
        c in arb_nonneg_fuzzy(),
        d in arb_nonneg_fuzzy(),
    ) {
        order_axioms(a, b, c, d)?;
    }

    #[test]
    fn distance_is_a_metric(a in arb_fuzzy(), b in arb_fuzzy(), c in arb_fuzzy()) {
        metric_axioms(a, b, c)?;
    }

    #[test]
    fn hukuhara_difference_roundtrips(a in arb_fuzzy(), b in arb_fuzzy()) {
        hukuhara_roundtrip(a, b)?;
    }

    #[test]
    fn dependent_square_sits_inside_product(a in arb_fuzzy()) {
        square_within_product(a)?;
    }

    #[test]
    fn negating_the_function_negates_f(coeffs in arb_poly_coeffs(), x in -3.0..3.0f64) {
        negation_antisymmetry(coeffs, x)?;
    }

    #[test]
    fn crisp_objectives_scalarize_to_twice_g(
        a in proptest::array::uniform4(-5.0..5.0f64),
        x in -3.0..3.0f64,
    ) {
        crisp_collapse(a, x)?;
    }

    #[test]
    fn builtin_derivatives_match_finite_differences(which in 0..3usize, x in -1.0..2.0f64) {
        fd_matches_analytic(which, x)?;
    }

    #[test]
    fn addition_commutes_and_associates(a in arb_fuzzy(), b in arb_fuzzy(), c in arb_fuzzy()) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        let left = a.try_add(&b).unwrap().try_add(&c).unwrap();
        let right = a.try_add(&b.try_add(&c).unwrap()).unwrap();
        prop_assert!(left.distance(&right).unwrap() <= 1e-12 * 64.0);
    }

    #[test]
    fn double_negation_is_exact(a in arb_fuzzy()) {
        prop_assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn scalarize_is_additive(p in arb_poly_coeffs(), q in arb_poly_coeffs(), x in -3.0..3.0f64) {
        let cfg = ScalarizationConfig::default();
        let fp = FuzzyPolynomial::new(p).unwrap();
        let fq = FuzzyPolynomial::new(q).unwrap();
        let (a, b) = (fp.clone(), fq.clone());
        let sum = LevelFn::new(move |t, alpha| {
            use fuzzy_newton::FuzzyFunction;
            let (l1, u1) = a.level(t, alpha);
            let (l2, u2) = b.level(t, alpha);
            (l1 + l2, u1 + u2)
        });
        let lhs = scalarize(&sum, x, &cfg).unwrap();
        let rhs = scalarize(&fp, x, &cfg).unwrap() + scalarize(&fq, x, &cfg).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
    }

    #[test]
    fn centroid_follows_shifts_and_scaling(
        a in arb_fuzzy(),
        shift in -10.0..10.0f64,
        lambda in -4.0..4.0f64,
    ) {
        centroid_equivariance(a, shift, lambda)?;
    }

    #[test]
    fn triangular_centroid_is_vertex_mean(t in arb_triangular()) {
        let c = centroid(&t.discretize(101).unwrap());
        let mean = (t.left() + t.peak() + t.right()) / 3.0;
        prop_assert!((c - mean).abs() <= 1e-12 * mean.abs().max(1.0), "{} vs {}", c, mean);
    }

    #[test]
    fn distance_to_crisp_shift_is_the_shift(a in arb_fuzzy(), s in -5.0..5.0f64) {
        let moved = a.try_add(&FuzzyNumberF64::crisp(s, M).unwrap()).unwrap();
        prop_assert!((a.distance(&moved).unwrap() - s.abs()).abs() <= 1e-12 * 32.0);
    }
}
