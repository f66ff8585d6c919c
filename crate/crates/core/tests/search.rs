mod common;

use common::oracle_verdicts;
use hermlie::catalog::{type_i_counterexample, witness_lists};
use hermlie::hermitian::{classify_metric, random_compatible_metric, random_complex_change_of_basis, ComplexStructure};
use hermlie::linalg::QMatrix;
use hermlie::search::{metric_parameterization, residual, search_metric, SearchConfig, SearchStatus};
use hermlie::shear::ConditionKind;
use hermlie::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn float_residual_vanishes_exactly_when_the_condition_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for e in witness_lists() {
        let mut metrics: Vec<_> = e.witnesses.iter().map(|w| w.metric.clone()).collect();
        metrics.extend((0..8).map(|_| random_compatible_metric(&e.j, &mut rng)));
        for g in metrics {
            let v = oracle_verdicts(&e.algebra, &g, &e.j);
            let s = g.matrix().to_f64();
            for kind in ConditionKind::ALL {
                let r = residual(&e.algebra, &e.j, &s, kind).unwrap();
                assert_eq!(r < 1e-12, v.get(kind), "{} {kind}: residual {r}", e.name);
                checked += 1;
            }
        }
    }
    assert!(checked >= 600);
}

#[test]
fn residual_rejects_incompatible_metrics() {
    let e = &witness_lists()[0];
    let mut s = QMatrix::identity(6).to_f64();
    s[0][0] = 3.0;
    assert!(matches!(residual(&e.algebra, &e.j, &s, ConditionKind::Kahler), Err(Error::IncompatibleMetric(_))));
}

#[test]
fn parameterization_has_n_squared_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=4 {
        let j = ComplexStructure::standard(2 * n);
        let m = random_complex_change_of_basis(&j, &mut rng);
        let j2 = j.change_basis(&m).unwrap();
        let p = metric_parameterization(&j2);
        assert_eq!(p.len(), n * n);
        let g = p.combine(&p.reference_coords);
        assert_eq!(g, p.reference);
    }
}

fn quick() -> SearchConfig {
    SearchConfig { seeds: (0..4).collect(), max_iterations: 1500, ..SearchConfig::default() }
}

#[test]
fn found_witnesses_are_exactly_verified() {
    let lists = witness_lists();
    let mut found = 0;
    for e in lists.iter().take(6) {
        for kind in [ConditionKind::Kahler, ConditionKind::Skt] {
            let r = search_metric(&e.algebra, &e.j, kind, &quick()).unwrap();
            assert!(r.min_eigenvalue_seen > 0.0);
            assert!(r.min_eigenvalue > 0.0);
            if r.status == SearchStatus::Found && r.exact_verified {
                found += 1;
                let g = r.exact_metric.unwrap();
                assert!(classify_metric(&e.algebra, &g, &e.j).unwrap().get(kind));
            }
        }
    }
    assert!(found >= 6);
}

#[test]
fn search_is_deterministic() {
    let e = &witness_lists()[2];
    let a = search_metric(&e.algebra, &e.j, ConditionKind::Balanced, &quick()).unwrap();
    let b = search_metric(&e.algebra, &e.j, ConditionKind::Balanced, &quick()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn no_kahler_metric_on_the_type_one_counterexample() {
    let e = type_i_counterexample();
    let r = search_metric(&e.algebra, &e.j, ConditionKind::Kahler, &quick()).unwrap();
    assert_eq!(r.status, SearchStatus::NotFound);
    assert!(!r.exact_verified);
    assert!(r.min_eigenvalue_seen > 0.0);
    let skt = search_metric(&e.algebra, &e.j, ConditionKind::Skt, &quick()).unwrap();
    assert!(skt.exact_verified);
}

#[test]
fn search_rejects_bad_input() {
    let e = &witness_lists()[0];
    let empty = SearchConfig { seeds: vec![], ..SearchConfig::default() };
    assert!(search_metric(&e.algebra, &e.j, ConditionKind::Kahler, &empty).is_err());
    let wrong = ComplexStructure::standard(4);
    assert!(search_metric(&e.algebra, &wrong, ConditionKind::Kahler, &quick()).is_err());
}
