mod common;

use common::oracle_verdicts;
use hermlie::forms::VectorValuedTwoForm;
use hermlie::hermitian::{classify_metric, ComplexStructure, Metric};
use hermlie::linalg::{unit, Subspace};
use hermlie::scalar::int;
use hermlie::shear::{
    build_shear, kahler_consequences, random_complex_shear, shear_operators, shear_verdicts, validate_pre_shear,
    PreShearData, ShearProfile,
};
use hermlie::Error;

fn fresh_samples(per_combo: u64) -> Vec<hermlie::shear::ShearSample> {
    let mut out = Vec::new();
    for p in ShearProfile::ALL {
        for dim in [4, 6, 8] {
            if dim < p.min_dim() || (dim == 8 && per_combo > 4) {
                continue;
            }
            for seed in 0..per_combo {
                out.push(random_complex_shear(900_000 + seed * 31 + dim as u64, p, dim).unwrap());
            }
        }
    }
    out
}

#[test]
fn shear_verdicts_match_brute_force_on_built_algebra() {
    let samples = fresh_samples(10);
    assert!(samples.len() >= 70);
    for s in &samples {
        let l = build_shear(&s.data).unwrap();
        let ours = shear_verdicts(&s.data, &s.g, &s.j).unwrap();
        if l.dim() <= 6 {
            assert_eq!(ours, oracle_verdicts(&l, &s.g, &s.j));
        }
        assert_eq!(ours, classify_metric(&l, &s.g, &s.j).unwrap());
    }
}

#[test]
fn eight_dimensional_samples_agree() {
    for p in ShearProfile::ALL {
        for seed in 0..3 {
            let s = random_complex_shear(77 + seed, p, 8).unwrap();
            let l = build_shear(&s.data).unwrap();
            assert_eq!(shear_verdicts(&s.data, &s.g, &s.j).unwrap(), classify_metric(&l, &s.g, &s.j).unwrap());
        }
    }
}

#[test]
fn structural_lemma_holds_on_samples() {
    let mut kahler = 0;
    for s in fresh_samples(8) {
        let (ops, report) = shear_operators(&s.data, &s.g, &s.j).unwrap();
        assert!(report.is_clean(), "{report:?}");
        if shear_verdicts(&s.data, &s.g, &s.j).unwrap().kahler {
            kahler += 1;
            assert!(kahler_consequences(&ops, &s.data, &s.j).all_hold());
        }
    }
    assert!(kahler > 0);
}

#[test]
fn bracket_data_round_trips_through_the_shear() {
    for s in fresh_samples(3) {
        let l = build_shear(&s.data).unwrap();
        let again = build_shear(&PreShearData::from_algebra(&l)).unwrap();
        assert_eq!(again, l);
    }
}

#[test]
fn restriction_violations_are_reported() {
    // a = span(e1, e2) but ω(e1, e2) = e1
    let a = Subspace::span(4, [unit(4, 0), unit(4, 1)]);
    let omega = VectorValuedTwoForm::from_fn(a.clone(), |i, j| match (i, j) {
        (0, 1) => unit(4, 0),
        (1, 0) => unit(4, 0).into_iter().map(|x| -x).collect(),
        _ => vec![int(0); 4],
    })
    .unwrap();
    let data = PreShearData::new(a, omega).unwrap();
    let report = validate_pre_shear(&data);
    assert_eq!(report.restriction_violations, vec![(1, 2)]);
    assert!(!report.is_valid());
    assert!(matches!(
        shear_verdicts(&data, &Metric::identity(4), &ComplexStructure::standard(4)),
        Err(Error::InvalidPreShear(_))
    ));
}

#[test]
fn values_outside_a_are_rejected() {
    let a = Subspace::span(4, [unit(4, 0)]);
    let omega = VectorValuedTwoForm::from_fn(Subspace::full(4), |i, j| match (i, j) {
        (2, 3) => unit(4, 1),
        (3, 2) => unit(4, 1).into_iter().map(|x| -x).collect(),
        _ => vec![int(0); 4],
    })
    .unwrap();
    assert!(PreShearData::new(a, omega).is_err());
}
