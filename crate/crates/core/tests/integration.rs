use bures_geom::barycenter::{bw_barycenter, check_barycenter_identity, StateEnsemble};
use bures_geom::divergence::{generalized_trace_functional, RenyiKind};
use bures_geom::fidelity::{
    fidelity_at, generalized_bures, generalized_fidelity, holevo, matsumoto, uhlmann, FidelityForm,
};
use bures_geom::linalg::{parse_positive, to_json, PositiveMatrix, TrialRng};
use bures_geom::manifold::{geodesic_point, squared_distance, MetricKind};
use bures_geom::verify::{check_path, run_suite, PathId, SuiteConfig, Verdict};

fn oracle_pair() -> (PositiveMatrix, PositiveMatrix) {
    (
        PositiveMatrix::from_real(2, &[0.75, 0.0, 0.0, 0.25]).unwrap(),
        PositiveMatrix::from_real(2, &[0.5, 0.25, 0.25, 0.5]).unwrap(),
    )
}

#[test]
fn oracle_values_through_every_entry_point() {
    let (p, q) = oracle_pair();
    let u = uhlmann(&p, &q).unwrap();
    assert!((u - 0.9354143466934852).abs() < 1e-12);
    assert!((holevo(&p, &q).unwrap() - 0.9330127018922193).abs() < 1e-12);
    assert!((matsumoto(&p, &q).unwrap() - 0.9258200997725514).abs() < 1e-12);
    for form in FidelityForm::ALL {
        let v = generalized_fidelity(&p, &q, &p, form).unwrap();
        assert!((v.re() - u).abs() < 1e-12, "{form:?}");
    }
    let bw = squared_distance(MetricKind::BuresWasserstein, &p, &q).unwrap();
    assert!((generalized_bures(&p, &q, &q).unwrap().powi(2) - bw).abs() < 1e-12);
}

#[test]
fn json_round_trip_preserves_the_fidelity() {
    let mut rng = TrialRng::new(5, 0);
    let (p, q, r) = (rng.density(4, 1e3), rng.density(4, 1e3), rng.positive(4, 1e3));
    let load = |m: &PositiveMatrix| parse_positive(&to_json(m.as_matrix())).unwrap();
    let a = fidelity_at(&p, &q, &r).unwrap();
    let b = fidelity_at(&load(&p), &load(&q), &load(&r)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bures_geodesic_bases_give_the_uhlmann_value() {
    let mut rng = TrialRng::new(9, 0);
    let (p, q) = (rng.density(5, 1e4), rng.density(5, 1e4));
    let u = uhlmann(&p, &q).unwrap();
    for k in 0..=10 {
        let r = geodesic_point(MetricKind::BuresWasserstein, &p, &q, k as f64 / 10.0).unwrap();
        let f = fidelity_at(&p, &q, &r).unwrap();
        assert!((f.re - u).abs() < 1e-9 * u, "t = {}", k as f64 / 10.0);
        assert!(f.im.abs() < 1e-10);
    }
}

#[test]
fn reductions_hold_near_the_condition_cap() {
    let mut rng = TrialRng::new(11, 0);
    for _ in 0..20 {
        let (p, q) = (rng.density(6, 1e6), rng.density(6, 1e6));
        let u = uhlmann(&p, &q).unwrap();
        for r in [&p, &q] {
            assert!((fidelity_at(&p, &q, r).unwrap() - u).norm() < 1e-9 * u);
        }
        assert!(generalized_bures(&p, &p, &q).unwrap() == 0.0);
    }
}

#[test]
fn renyi_recoveries_with_extreme_bases() {
    let mut rng = TrialRng::new(13, 0);
    for _ in 0..20 {
        let (p, q) = (rng.density(6, 1e6), rng.density(6, 1e6));
        for alpha in [0.3, 0.7, 2.0, 3.0] {
            for kind in RenyiKind::ALL {
                let base = kind.base(&p, &q, alpha).unwrap();
                let f = generalized_trace_functional(&p, &q, &base, alpha).unwrap();
                let target = kind.quantity(&p, &q, alpha).unwrap();
                assert!((f.to_complex() - target).norm() <= 1e-8 * target.abs(), "{kind} {alpha}");
            }
        }
    }
}

#[test]
fn barycenter_identity_and_geodesic_midpoint() {
    let mut rng = TrialRng::new(17, 0);
    let states: Vec<_> = (0..3).map(|_| rng.density(3, 1e3)).collect();
    let report = check_barycenter_identity(&states, 1e-12).unwrap();
    assert!(report.residual <= 1e-7, "{report:?}");

    let (p, q) = (states[0].clone(), states[1].clone());
    let mid = geodesic_point(MetricKind::BuresWasserstein, &p, &q, 0.5).unwrap();
    let bary = bw_barycenter(&StateEnsemble::uniform(vec![p, q]).unwrap(), 1e-13, 10_000).unwrap();
    let diff = (bary.sigma.as_matrix() - mid.as_matrix()).norm();
    assert!(diff <= 1e-8 * mid.frobenius());
}

#[test]
fn every_path_theorem_on_one_pair() {
    let mut rng = TrialRng::new(19, 0);
    let (p, q) = (rng.density(3, 1e3), rng.density(3, 1e3));
    for path in PathId::all() {
        let report = check_path(path, &p, &q, 11, 1e-8);
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    }
}

#[test]
fn small_suite_is_deterministic() {
    let config = SuiteConfig {
        dims: vec![2, 3],
        trials: 4,
        ..SuiteConfig::default()
    };
    let a = run_suite(&config);
    let b = run_suite(&config);
    assert!(a.passed, "{:?}", a.failed_checks().collect::<Vec<_>>());
    assert_eq!(a.to_json(), b.to_json());
}
