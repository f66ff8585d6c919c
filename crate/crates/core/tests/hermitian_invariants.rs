mod common;

use common::{nijenhuis_vanishes, oracle_forms, oracle_verdicts, sigma};
use hermlie::catalog::{salamon, witness_lists};
use hermlie::hermitian::{
    classify_metric, fundamental_form, hermitian_decomposition, hermitian_forms, is_integrable, random_compatible_metric,
    random_complex_change_of_basis, ClassifyOptions, ComplexStructure, Metric, PureType,
};
use hermlie::linalg::{unit, QMatrix};
use hermlie::scalar::int;
use hermlie::shear::{build_shear, random_complex_shear, ShearProfile};
use hermlie::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn samples(count: u64) -> impl Iterator<Item = (hermlie::algebra::LieAlgebra, Metric, ComplexStructure)> {
    ShearProfile::ALL.into_iter().flat_map(move |p| {
        let dims: Vec<usize> = [4, 6].into_iter().filter(|&d| d >= p.min_dim()).collect();
        dims.into_iter().flat_map(move |dim| {
            (0..count).map(move |seed| {
                let s = random_complex_shear(50_000 + seed, p, dim).unwrap();
                (build_shear(&s.data).unwrap(), s.g, s.j)
            })
        })
    })
}

#[test]
fn forms_agree_with_brute_force() {
    let mut n = 0;
    for (l, g, j) in samples(12) {
        let ours = hermitian_forms(&l, &g, &j, ClassifyOptions::default()).unwrap();
        let oracle = oracle_forms(&l, &g, &j);
        assert!(sigma(&g, &j).matches(&ours.sigma));
        assert!(oracle.d_sigma.matches(&ours.d_sigma));
        assert!(oracle.d_sigma_power.matches(&ours.d_sigma_power));
        assert!(oracle.d_j_d_sigma.matches(&ours.d_j_d_sigma));
        n += 1;
    }
    assert!(n >= 100);
}

#[test]
fn catalog_metrics_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for e in witness_lists() {
        let mut metrics: Vec<Metric> = e.witnesses.iter().map(|w| w.metric.clone()).collect();
        metrics.push(random_compatible_metric(&e.j, &mut rng));
        for g in &metrics {
            assert_eq!(classify_metric(&e.algebra, g, &e.j).unwrap(), oracle_verdicts(&e.algebra, g, &e.j), "{}", e.name);
        }
    }
}

#[test]
fn kahler_implies_balanced_and_skt() {
    let mut kahler = 0;
    for (l, g, j) in samples(20) {
        let v = classify_metric(&l, &g, &j).unwrap();
        if v.kahler {
            kahler += 1;
            assert!(v.balanced && v.skt);
        }
    }
    assert!(kahler > 10);
}

#[test]
fn verdicts_and_decomposition_survive_complex_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (l, g, j) in samples(6) {
        let m = random_complex_change_of_basis(&j, &mut rng);
        let (l2, g2, j2) = (l.change_basis(&m).unwrap(), g.change_basis(&m).unwrap(), j.change_basis(&m).unwrap());
        assert_eq!(classify_metric(&l, &g, &j).unwrap(), classify_metric(&l2, &g2, &j2).unwrap());
        let (d1, d2) = (hermitian_decomposition(&l, &g, &j).unwrap(), hermitian_decomposition(&l2, &g2, &j2).unwrap());
        assert_eq!((d1.s, d1.r, d1.ell, d1.pure_type), (d2.s, d2.r, d2.ell, d2.pure_type));
    }
}

#[test]
fn decomposition_dimensions_add_up() {
    for (l, g, j) in samples(6) {
        let d = hermitian_decomposition(&l, &g, &j).unwrap();
        assert_eq!(2 * (d.s + d.r + d.ell), l.dim());
        assert_eq!(d.derg.dim(), 2 * d.s + d.derg_r.dim());
        assert_eq!(d.derg_r.dim(), d.r);
        assert!(j.preserves(&d.v_j) && j.preserves(&d.v_r) && j.preserves(&d.derg_j));
    }
}

#[test]
fn fundamental_form_is_j_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for e in witness_lists() {
        let g = random_compatible_metric(&e.j, &mut rng);
        let s = fundamental_form(&g, &e.j).unwrap();
        assert_eq!(e.j.pullback(&s), s);
    }
}

#[test]
fn integrability_matches_nijenhuis_on_basis() {
    let l = salamon("(0,21,0,43,0,65)").unwrap();
    let good = ComplexStructure::standard(6);
    assert!(is_integrable(&l, &good) && nijenhuis_vanishes(&l, &good));
    // pair e1 with e3 instead: J e1 = e3
    let odd = ComplexStructure::from_pairs(6, &[(1, 3), (2, 4), (5, 6)]).unwrap();
    assert_eq!(is_integrable(&l, &odd), nijenhuis_vanishes(&l, &odd));
    let h = salamon("(0,0,0,0,12,34)").unwrap();
    let j = ComplexStructure::from_pairs(6, &[(1, 5), (2, 6), (3, 4)]).unwrap();
    if !nijenhuis_vanishes(&h, &j) {
        assert_eq!(classify_metric(&h, &Metric::identity(6), &j), Err(Error::NotIntegrable));
    }
}

#[test]
fn incompatible_metric_is_rejected() {
    let l = salamon("(0,21,0,0)").unwrap();
    let mut s = QMatrix::identity(4);
    s[(0, 0)] = int(2);
    let g = Metric::new(s).unwrap();
    assert!(matches!(classify_metric(&l, &g, &ComplexStructure::standard(4)), Err(Error::IncompatibleMetric(_))));
}

#[test]
fn not_a_complex_structure() {
    assert_eq!(ComplexStructure::new(QMatrix::identity(2)), Err(Error::NotAComplexStructure));
    let _ = unit(2, 0);
}

#[test]
fn pure_types_of_catalog_notes() {
    for e in witness_lists() {
        let g = &e.witnesses[0].metric;
        let d = hermitian_decomposition(&e.algebra, g, &e.j).unwrap();
        for (note, t) in [("pure type I", PureType::I), ("pure type II", PureType::II), ("pure type III", PureType::III)] {
            if e.notes.iter().any(|n| n.starts_with(note) && !n.starts_with(&format!("{note}I"))) {
                assert!(d.is_type(t), "{} should be {note}", e.name);
            }
        }
        if e.notes.iter().any(|n| n == "not of pure type") {
            assert!(!d.is_type(PureType::I) && !d.is_type(PureType::II) && !d.is_type(PureType::III), "{}", e.name);
        }
    }
}
