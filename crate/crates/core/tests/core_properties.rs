mod common;

use common::{jacobi_holds, Form};
use hermlie::algebra::{aff_sum, heisenberg, LieAlgebra};
use hermlie::catalog::{render_salamon, salamon, witness_lists};
use hermlie::forms::{Differential, KForm};
use hermlie::linalg::QMatrix;
use hermlie::scalar::{format_scalar, parse_scalar, q, rationalize, Scalar};
use hermlie::shear::{build_shear, random_complex_shear, ShearProfile};
use proptest::prelude::*;

fn random_form(dim: usize, degree: usize, coeffs: &[i64]) -> KForm {
    let mut f = KForm::zero(dim, degree);
    let masks: Vec<u32> = (0u32..1 << dim).filter(|m| m.count_ones() as usize == degree).collect();
    for (m, c) in masks.iter().zip(coeffs.iter().cycle()) {
        f.add_term(*m, q(*c, 1));
    }
    f
}

fn sample_algebra(seed: u64, profile_index: usize, six: bool) -> LieAlgebra {
    let profile = ShearProfile::ALL[profile_index % ShearProfile::ALL.len()];
    let dim = if six || profile == ShearProfile::Mixed { 6 } else { 4 };
    build_shear(&random_complex_shear(seed, profile, dim).unwrap().data).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn differential_squares_to_zero(seed in 0u64..500, p in 0usize..5, degree in 0usize..4, coeffs in prop::collection::vec(-3i64..=3, 1..8)) {
        let l = sample_algebra(seed, p, true);
        let d = Differential::<Scalar>::new(&l);
        let f = random_form(6, degree, &coeffs);
        prop_assert!(d.apply(&d.apply(&f)).is_zero());
    }

    #[test]
    fn differential_matches_evaluation_formula(seed in 0u64..500, p in 0usize..5, degree in 1usize..4, coeffs in prop::collection::vec(-3i64..=3, 1..8)) {
        let l = sample_algebra(seed, p, true);
        let f = random_form(6, degree, &coeffs);
        let ours = Differential::<Scalar>::new(&l).apply(&f);
        prop_assert!(Form::from_kform(&f).d(&l).matches(&ours));
    }

    #[test]
    fn wedge_matches_shuffle_formula(a in prop::collection::vec(-3i64..=3, 1..6), b in prop::collection::vec(-3i64..=3, 1..6), p in 1usize..3, r in 1usize..3) {
        let (x, y) = (random_form(6, p, &a), random_form(6, r, &b));
        let ours = x.wedge(&y);
        prop_assert!(Form::from_kform(&x).wedge(&Form::from_kform(&y)).matches(&ours));
        // graded commutativity
        let swapped = y.wedge(&x);
        let expected = if p * r % 2 == 0 { ours.clone() } else { ours.neg() };
        prop_assert_eq!(swapped, expected);
    }

    #[test]
    fn shear_builds_satisfy_jacobi(seed in 0u64..2000, p in 0usize..5, six in any::<bool>()) {
        let l = sample_algebra(seed, p, six);
        prop_assert!(jacobi_holds(&l));
        prop_assert!(l.is_two_step_solvable());
    }

    #[test]
    fn salamon_round_trip(seed in 0u64..2000, p in 0usize..5, six in any::<bool>()) {
        let l = sample_algebra(seed, p, six);
        let text = render_salamon(&l);
        prop_assert_eq!(salamon(&text).unwrap(), l);
    }

    #[test]
    fn nullspace_and_rank(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..6)) {
        let m = QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect());
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), 5);
        for v in &null {
            prop_assert!(hermlie::linalg::is_zero(&m.mul_vec(v)));
        }
    }

    #[test]
    fn inverse_is_two_sided(entries in prop::collection::vec(-5i64..=5, 16)) {
        let m = QMatrix::from_rows(entries.chunks(4).map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect());
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), QMatrix::identity(4));
                prop_assert_eq!(inv.mul(&m), QMatrix::identity(4));
            }
            None => prop_assert_eq!(m.determinant(), q(0, 1)),
        }
    }

    #[test]
    fn scalar_text_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let x = q(n, d);
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x.clone());
        prop_assert_eq!(rationalize(n as f64 / d as f64, 500), x);
    }
}

#[test]
fn named_algebras() {
    assert_eq!(render_salamon(&heisenberg()), "(0,0,21)");
    assert_eq!(render_salamon(&aff_sum(2, 1)), "(0,21,0,43,0)");
    assert!(heisenberg().is_nilpotent());
    assert!(!aff_sum(1, 0).is_unimodular());
}

#[test]
fn catalog_algebras_satisfy_jacobi_by_brute_force() {
    for e in witness_lists() {
        assert!(jacobi_holds(&e.algebra), "{}", e.name);
    }
}

#[test]
fn jacobi_failures_are_rejected() {
    // d(de^1) = d(e^{13}) = -e^{123} ≠ 0

    assert!(salamon("(13,0,12)").is_err());
}
