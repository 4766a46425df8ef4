mod common;

use common::*;
use proptest::prelude::*;
use superflag::weights::{root_system, Weight};
use superflag::{FieldScalar, Parity};

#[test]
fn supercommutativity() {
    check_supercommutativity(11, 200).unwrap();
}

#[test]
fn derivatives_anticommute() {
    check_derivative_anticommutation(12, 200).unwrap();
}

#[test]
fn supertranspose_of_product() {
    check_st_product_rule(13, 100).unwrap();
}

#[test]
fn inverse_is_two_sided() {
    check_two_sided_inverse(14, 40).unwrap();
}

#[test]
fn dominance_criteria_agree() {
    check_dominance_equivalence().unwrap();
}

#[test]
fn matrix_superbracket_jacobi() {
    check_matrix_jacobi(15, 60).unwrap();
}

#[test]
fn substitution_is_a_homomorphism() {
    let mut r = rng(16);
    let ctx = ring(2, 3);
    let vars = ctx.variables();
    for _ in 0..60 {
        let bindings: Vec<_> = vars
            .iter()
            .map(|v| (v.clone(), poly(&mut r, &ctx, v.parity(), 2)))
            .collect();
        let p = poly(&mut r, &ctx, Parity::Odd, 3);
        let q = poly(&mut r, &ctx, Parity::Even, 3);
        let sub = |f: &superflag::SuperPoly| f.substitute(&bindings).unwrap();
        assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
        assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
        let image = sub(&p);
        assert!(image.is_zero() || image.parity() == Some(Parity::Odd));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn field_inverse(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
        let x = FieldScalar::from_i64(a)
            + FieldScalar::from_i64(b) * FieldScalar::i()
            + FieldScalar::from_i64(c) * FieldScalar::sqrt2()
            + FieldScalar::from_i64(d) * FieldScalar::i() * FieldScalar::sqrt2();
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn dominance_is_scale_invariant(
        mu in proptest::collection::vec(-5i64..5, 0..4),
        lambda in proptest::collection::vec(-5i64..5, 0..4),
        c in 1i64..6,
    ) {
        let rs = root_system(mu.len(), lambda.len());
        let w = Weight { mu, lambda };
        prop_assert_eq!(rs.is_dominant(&w).unwrap(), rs.is_dominant(&w.scale(c)).unwrap());
        prop_assert_eq!(rs.is_dominant(&w).unwrap(), rs.is_dominant_simple(&w).unwrap());
    }
}
