//! Property-based tests: the algebra laws and norm-bracket invariants that
//! must hold for *every* input, checked on randomized polynomials and
//! deformation parameters rather than hand-picked examples.
//!
//! Fixed-seed integration tests pin known values; these tests instead search
//! for structural violations — broken associativity at awkward lattice
//! points, bracket inversions, certificates that drift apart under
//! symmetries the norm provably has (involution, translation, scaling).

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use rieffel_fields::{
    act, deformed_mul, derivative, norm_bracket, pointwise_mul, sup_norm, CharacterAction,
    PhaseCocycle, TrigPoly,
};

/// A dim-2 polynomial with up to four terms in the box ‖k‖_∞ ≤ 4.
fn small_poly() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec(
        ((-4i64..=4, -4i64..=4), (-1.0f64..1.0, -1.0f64..1.0)),
        1..5,
    )
    .prop_map(|terms| {
        let mut p = TrigPoly::zero(2);
        for ((k0, k1), (re, im)) in terms {
            p.add_term(&[k0, k1], Complex64::new(re, im)).unwrap();
        }
        p
    })
}

/// A planar cocycle e_k # e_l = exp(iβ(k₀l₁ − k₁l₀))·e_{k+l}.
fn planar_cocycle(beta: f64) -> PhaseCocycle {
    let b = DMatrix::from_row_slice(2, 2, &[0.0, beta, -beta, 0.0]);
    PhaseCocycle::from_deformation_matrix(b, CharacterAction::identity(2)).unwrap()
}

/// A skew 4×4 matrix S − Sᵀ from free entries (exactly antisymmetric in f64).
fn skew4(entries: &[f64; 16]) -> DMatrix<f64> {
    let s = DMatrix::from_row_slice(4, 4, entries);
    &s - s.transpose()
}

/// Scale of the largest coefficient appearing in any of the polynomials,
/// used to turn absolute coefficient residuals into relative ones.
fn coeff_scale(polys: &[&TrigPoly]) -> f64 {
    polys
        .iter()
        .flat_map(|p| p.iter().map(|(_, c)| c.norm()))
        .fold(1.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn phase_is_antisymmetric_and_vanishes_on_the_diagonal(
        k in prop::collection::vec(-20i64..=20, 4),
        l in prop::collection::vec(-20i64..=20, 4),
        entries in prop::array::uniform16(-10.0f64..10.0),
    ) {
        let cocycle = PhaseCocycle::from_deformation_matrix(
            skew4(&entries),
            CharacterAction::identity(4),
        ).unwrap();
        let forward = cocycle.phase(&k, &l).unwrap();
        let backward = cocycle.phase(&l, &k).unwrap();
        // Swapping the arguments negates every integer pairing exactly, so
        // the phases are exact negatives bit for bit, not just approximately.
        prop_assert_eq!(forward, -backward);
        prop_assert_eq!(cocycle.phase(&k, &k).unwrap(), 0.0);
    }

    #[test]
    fn deformed_product_is_associative(
        f in small_poly(),
        g in small_poly(),
        h in small_poly(),
        beta in -10.0f64..10.0,
    ) {
        let cocycle = planar_cocycle(beta);
        let fg_h = deformed_mul(&deformed_mul(&f, &g, &cocycle).unwrap(), &h, &cocycle).unwrap();
        let f_gh = deformed_mul(&f, &deformed_mul(&g, &h, &cocycle).unwrap(), &cocycle).unwrap();
        let residual = fg_h.max_coeff_distance(&f_gh).unwrap();
        let scale = coeff_scale(&[&f, &g, &h]);
        prop_assert!(residual <= 1e-10 * scale.powi(3), "residual {residual}");
    }

    #[test]
    fn unit_is_neutral_for_every_deformation(
        f in small_poly(),
        beta in -10.0f64..10.0,
    ) {
        let cocycle = planar_cocycle(beta);
        let one = TrigPoly::constant(2, Complex64::new(1.0, 0.0));
        prop_assert_eq!(deformed_mul(&one, &f, &cocycle).unwrap(), f.clone());
        prop_assert_eq!(deformed_mul(&f, &one, &cocycle).unwrap(), f);
    }

    #[test]
    fn involution_reverses_deformed_products(
        f in small_poly(),
        g in small_poly(),
        beta in -10.0f64..10.0,
    ) {
        let cocycle = planar_cocycle(beta);
        let starred = deformed_mul(&f, &g, &cocycle).unwrap().involution();
        let reversed = deformed_mul(&g.involution(), &f.involution(), &cocycle).unwrap();
        let residual = starred.max_coeff_distance(&reversed).unwrap();
        prop_assert!(residual <= 1e-12 * coeff_scale(&[&f, &g]).powi(2), "residual {residual}");
    }

    #[test]
    fn zero_deformation_is_bitwise_the_pointwise_product(
        f in small_poly(),
        g in small_poly(),
    ) {
        let classical = PhaseCocycle::classical(CharacterAction::identity(2));
        prop_assert_eq!(
            deformed_mul(&f, &g, &classical).unwrap(),
            pointwise_mul(&f, &g).unwrap()
        );
    }

    #[test]
    fn directional_derivatives_satisfy_the_leibniz_rule(
        f in small_poly(),
        g in small_poly(),
        beta in -10.0f64..10.0,
        axis in 0usize..2,
    ) {
        let cocycle = planar_cocycle(beta);
        let action = CharacterAction::identity(2);
        let mut alpha = [0usize; 2];
        alpha[axis] = 1;
        let lhs = derivative(
            &deformed_mul(&f, &g, &cocycle).unwrap(), &action, &alpha,
        ).unwrap();
        let rhs = deformed_mul(&derivative(&f, &action, &alpha).unwrap(), &g, &cocycle)
            .unwrap()
            .plus(&deformed_mul(&f, &derivative(&g, &action, &alpha).unwrap(), &cocycle).unwrap())
            .unwrap();
        let residual = lhs.max_coeff_distance(&rhs).unwrap();
        // Derivatives multiply coefficients by 2π·k, so allow that growth.
        let scale = coeff_scale(&[&f, &g]).powi(2) * 60.0;
        prop_assert!(residual <= 1e-12 * scale, "residual {residual}");
    }

    #[test]
    fn classical_upper_bounds_dominate_point_evaluations(
        f in small_poly(),
        theta in prop::collection::vec(-0.5f64..0.5, 2),
    ) {
        let bracket = sup_norm(&f, 64).unwrap();
        let sample = f.eval(&theta).unwrap().norm();
        prop_assert!(
            sample <= bracket.upper() + 1e-9,
            "point value {sample} above certified upper {}",
            bracket.upper()
        );
        prop_assert!(bracket.lower() <= bracket.upper());
    }
}

// Bracket computations run an SVD per case, so keep the case count modest.
proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn bracket_endpoints_are_ordered_and_capped_by_the_summed_moduli(
        f in small_poly(),
        beta in -10.0f64..10.0,
    ) {
        let bracket = norm_bracket(&f, &planar_cocycle(beta), 6, 2, 20_000).unwrap();
        prop_assert!(bracket.lower() >= 0.0);
        prop_assert!(bracket.lower() <= bracket.upper());
        let l1 = f.l1_norm();
        prop_assert!(
            bracket.upper() <= l1 * (1.0 + 1e-12) + 1e-12,
            "upper {} exceeds coefficient sum {l1}",
            bracket.upper()
        );
    }

    #[test]
    fn involution_preserves_the_norm_so_brackets_must_overlap(
        f in small_poly(),
        beta in -10.0f64..10.0,
    ) {
        let cocycle = planar_cocycle(beta);
        let direct = norm_bracket(&f, &cocycle, 6, 2, 20_000).unwrap();
        let starred = norm_bracket(&f.involution(), &cocycle, 6, 2, 20_000).unwrap();
        let slack = 1e-9 * (1.0 + direct.upper());
        prop_assert!(direct.lower() <= starred.upper() + slack);
        prop_assert!(starred.lower() <= direct.upper() + slack);
    }

    #[test]
    fn translation_preserves_the_norm_so_brackets_must_overlap(
        f in small_poly(),
        beta in -10.0f64..10.0,
        x in prop::collection::vec(-1.0f64..1.0, 2),
    ) {
        let cocycle = planar_cocycle(beta);
        let moved = act(&f, cocycle.action(), &x).unwrap();
        let before = norm_bracket(&f, &cocycle, 6, 2, 20_000).unwrap();
        let after = norm_bracket(&moved, &cocycle, 6, 2, 20_000).unwrap();
        let slack = 1e-9 * (1.0 + before.upper());
        prop_assert!(before.lower() <= after.upper() + slack);
        prop_assert!(after.lower() <= before.upper() + slack);
    }

    #[test]
    fn doubling_the_element_doubles_the_norm_so_brackets_must_overlap(
        f in small_poly(),
        beta in -10.0f64..10.0,
    ) {
        let cocycle = planar_cocycle(beta);
        let one = norm_bracket(&f, &cocycle, 6, 2, 20_000).unwrap();
        let two = norm_bracket(
            &f.scaled(Complex64::new(2.0, 0.0)), &cocycle, 6, 2, 20_000,
        ).unwrap();
        let slack = 1e-9 * (1.0 + two.upper());
        prop_assert!(2.0 * one.lower() <= two.upper() + slack);
        prop_assert!(two.lower() <= 2.0 * one.upper() + slack);
    }

    #[test]
    fn serialized_polynomials_survive_a_round_trip_bit_for_bit(
        f in small_poly(),
    ) {
        let text = serde_json::to_string(&f).unwrap();
        let back: TrigPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}
