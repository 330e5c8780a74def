use super::*;
use crate::linalg::{direct_sum, kron, relative_frobenius, TrialRng};
use crate::manifold::{geodesic_point, squared_distance, MetricKind};
use proptest::prelude::*;

const UHLMANN_P0Q0: f64 = 0.9354143466934852;
const HOLEVO_P0Q0: f64 = 0.9330127018922191;
const MATSUMOTO_P0Q0: f64 = 0.9258200997725512;
const LOG_EUCLIDEAN_P0Q0: f64 = 0.9321789033083542;

fn p0() -> PositiveMatrix {
    PositiveMatrix::from_diagonal(&[0.75, 0.25]).unwrap()
}

fn q0() -> PositiveMatrix {
    PositiveMatrix::from_real(2, &[0.5, 0.25, 0.25, 0.5]).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

fn triple(rng: &mut TrialRng, d: usize) -> (PositiveMatrix, PositiveMatrix, PositiveMatrix) {
    (
        rng.positive(d, 1e4),
        rng.positive(d, 1e4),
        rng.positive(d, 1e4),
    )
}

#[test]
fn classical_fidelity_examples() {
    assert!((classical_fidelity(&[0.5, 0.5], &[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(classical_fidelity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
    let f = classical_fidelity(&[0.25, 0.75], &[0.75, 0.25]).unwrap();
    assert!((f - 2.0 * 0.1875f64.sqrt()).abs() < 1e-15);
    assert!(matches!(
        classical_fidelity(&[-0.1, 1.1], &[0.5, 0.5]),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        classical_fidelity(&[1.0], &[0.5, 0.5]),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn named_fidelity_oracles() {
    let (p, q) = (p0(), q0());
    assert!((uhlmann(&p, &q).unwrap() - UHLMANN_P0Q0).abs() < 1e-14);
    assert!((holevo(&p, &q).unwrap() - HOLEVO_P0Q0).abs() < 1e-14);
    assert!((matsumoto(&p, &q).unwrap() - MATSUMOTO_P0Q0).abs() < 1e-14);
    assert!((log_euclidean(&p, &q).unwrap() - LOG_EUCLIDEAN_P0Q0).abs() < 1e-14);
    // Qubit closed form F^U² = Tr[PQ] + 2√(det P det Q).
    let closed = (p.trace_product(&q).unwrap() + 2.0 * (0.1875f64 * 0.1875).sqrt()).sqrt();
    assert!((uhlmann(&p, &q).unwrap() - closed).abs() < 1e-15);
}

#[test]
fn named_fidelities_are_one_on_equal_densities_and_classical_on_commuting_pairs() {
    let mut rng = TrialRng::new(1, 0);
    let rho = rng.density(3, 1e4);
    for f in [
        NamedFidelity::Uhlmann,
        NamedFidelity::Holevo,
        NamedFidelity::Matsumoto,
        NamedFidelity::LogEuclidean,
        NamedFidelity::Z(0.7),
    ] {
        assert!((f.evaluate(&rho, &rho).unwrap() - 1.0).abs() < 1e-12, "{f}");
        let (a, b) = ([0.2, 0.3, 0.5], [0.6, 0.1, 0.3]);
        let pa = PositiveMatrix::from_diagonal(&a).unwrap();
        let pb = PositiveMatrix::from_diagonal(&b).unwrap();
        let cl = classical_fidelity(&a, &b).unwrap();
        assert!((f.evaluate(&pa, &pb).unwrap() - cl).abs() < 1e-14, "{f}");
    }
}

#[test]
fn z_fidelity_reductions() {
    let (p, q) = (p0(), q0());
    assert!((z_fidelity(&p, &q, 1.0).unwrap() - HOLEVO_P0Q0).abs() < 1e-14);
    assert!((z_fidelity(&p, &q, 0.5).unwrap() - UHLMANN_P0Q0).abs() < 1e-14);
    let far = z_fidelity(&p, &q, 1e4).unwrap();
    let nearer = z_fidelity(&p, &q, 1e2).unwrap();
    assert!((far - LOG_EUCLIDEAN_P0Q0).abs() < 1e-5);
    assert!((far - LOG_EUCLIDEAN_P0Q0).abs() < (nearer - LOG_EUCLIDEAN_P0Q0).abs());
    assert!(matches!(
        z_fidelity(&p, &q, 0.0),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        z_fidelity(&p, &q, -1.0),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn hellinger_examples() {
    let (p, q) = (p0(), q0());
    assert!(
        hellinger_quantity(&p, &p, NamedFidelity::Uhlmann)
            .unwrap()
            .abs()
            < 1e-14
    );
    let hu = hellinger_quantity(&p, &q, NamedFidelity::Uhlmann).unwrap();
    assert!((hu - 0.129171).abs() < 1e-6);
    assert!((hu - squared_distance(MetricKind::BuresWasserstein, &p, &q).unwrap()).abs() < 1e-15);
    let hh = hellinger_quantity(&p, &q, NamedFidelity::Holevo).unwrap();
    assert!((hh - 0.133974).abs() < 1e-6);
}

#[test]
fn generalized_fidelity_reductions_on_the_oracle_pair() {
    let (p, q) = (p0(), q0());
    let i2 = PositiveMatrix::identity(2);
    for form in FidelityForm::ALL {
        let at = |r: &PositiveMatrix| generalized_fidelity(&p, &q, r, form).unwrap().complex();
        assert!(close(at(&i2), c(HOLEVO_P0Q0), 1e-13), "{form:?}");
        assert!(close(at(&p), c(UHLMANN_P0Q0), 1e-13), "{form:?}");
        assert!(close(at(&q), c(UHLMANN_P0Q0), 1e-13), "{form:?}");
        assert!(
            close(at(&p.inverse()), c(MATSUMOTO_P0Q0), 1e-13),
            "{form:?}"
        );
        assert!(
            close(at(&q.inverse()), c(MATSUMOTO_P0Q0), 1e-13),
            "{form:?}"
        );
    }
}

#[test]
fn generalized_fidelity_of_equal_arguments_is_the_trace() {
    let mut rng = TrialRng::new(2, 0);
    let (p, _, r) = triple(&mut rng, 4);
    let f = generalized_fidelity(&p, &p, &r, FidelityForm::Definition).unwrap();
    assert!(close(f.complex(), c(p.trace()), 1e-12));
    assert!(f.im().abs() < 1e-12);
}

#[test]
fn rank_deficient_input_falls_back_to_definition_form() {
    let p = HermitianMatrix::from_diagonal(&[1.0, 0.0]);
    let q = HermitianMatrix::from_diagonal(&[0.0, 1.0]);
    let r = random_positive_for_tests(2);
    for form in FidelityForm::ALL {
        let f = generalized_fidelity(&p, &q, &r, form).unwrap();
        assert_eq!(f.form, FidelityForm::Definition);
        // Orthogonal supports.
        assert!(f.complex().norm() < 1e-14);
    }
}

fn random_positive_for_tests(d: usize) -> PositiveMatrix {
    TrialRng::new(77, 0).positive(d, 1e3)
}

#[test]
fn base_must_be_positive() {
    let p = p0();
    let r = HermitianMatrix::from_diagonal(&[1.0, 0.0]);
    assert!(PositiveMatrix::new(r).is_err());
    assert!(matches!(
        generalized_fidelity(
            &p,
            &p,
            &PositiveMatrix::identity(3),
            FidelityForm::Definition
        ),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn pure_state_formula() {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let psi = DVector::from_vec(vec![c(1.0), c(0.0)]);
    let phi = DVector::from_vec(vec![c(r2), c(r2)]);
    let i2 = PositiveMatrix::identity(2);
    let f = generalized_fidelity_pure(&psi, &phi, &i2).unwrap();
    assert!((f.re - 0.5).abs() < 1e-15 && f.im.abs() < 1e-15);

    let mut rng = TrialRng::new(3, 0);
    let r = rng.positive(3, 1e3);
    let a = rng.pure_state(3);
    let same = generalized_fidelity_pure(&a, &a, &r).unwrap();
    assert!((same.re - 1.0).abs() < 1e-14 && same.im.abs() < 1e-14);

    let e0 = DVector::from_vec(vec![c(1.0), c(0.0), c(0.0)]);
    let e1 = DVector::from_vec(vec![c(0.0), c(1.0), c(0.0)]);
    assert!(generalized_fidelity_pure(&e0, &e1, &r).unwrap().abs() < 1e-15);

    for _ in 0..10 {
        let a = rng.pure_state(3);
        let b = rng.pure_state(3);
        let pa = HermitianMatrix::from_hermitian_part(&(&a * a.adjoint()));
        let pb = HermitianMatrix::from_hermitian_part(&(&b * b.adjoint()));
        let direct = generalized_fidelity(&pa, &pb, &r, FidelityForm::Definition).unwrap();
        let pure = generalized_fidelity_pure(&a, &b, &r).unwrap();
        assert!(close(pure.into(), direct.complex(), 1e-9));
    }
    let long = DVector::from_vec(vec![c(1.0), c(1.0), c(0.0)]);
    assert!(matches!(
        generalized_fidelity_pure(&long, &e0, &r),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn generalized_bures_examples() {
    let (p, q) = (p0(), q0());
    let i2 = PositiveMatrix::identity(2);
    assert!(generalized_bures_sq(&p, &p, &q).unwrap() < 1e-14);
    let at_p = generalized_bures_sq(&p, &q, &p).unwrap();
    assert!((at_p - squared_distance(MetricKind::BuresWasserstein, &p, &q).unwrap()).abs() < 1e-14);
    assert!((at_p - 0.129171).abs() < 1e-6);
    let at_i = generalized_bures_sq(&p, &q, &i2).unwrap();
    assert!((at_i - (2.0 - 2.0 * HOLEVO_P0Q0)).abs() < 1e-14);
    assert!((generalized_bures(&p, &q, &i2).unwrap() - at_i.sqrt()).abs() < 1e-15);
}

#[test]
fn unitary_factor_properties() {
    let mut rng = TrialRng::new(5, 0);
    for d in 2..7 {
        let (p, q, r) = triple(&mut rng, d);
        let u = unitary_factor(&p, &q, &r).unwrap();
        assert!((u.determinant() - c(1.0)).norm() < 1e-8);
        let f = trace(&(q.sqrt().as_matrix() * u.as_matrix() * p.sqrt().as_matrix()));
        assert!(close(f, fidelity_at(&p, &q, &r).unwrap(), 1e-9));
        let same = unitary_factor(&p, &p, &r).unwrap();
        assert!(relative_frobenius(same.as_matrix(), &CMatrix::identity(d, d)) < 1e-12);
    }
}

#[test]
fn unitary_factor_on_the_bw_geodesic() {
    // Along γ^BW_{PQ}, U_P U_Q* = Pol(P^{1/2} Q^{1/2}), so the factor U_Q U_P* is its adjoint.
    let mut rng = TrialRng::new(6, 0);
    for d in 2..6 {
        let p = rng.positive(d, 1e4);
        let q = rng.positive(d, 1e4);
        let pol = polar_factor(&(p.sqrt().as_matrix() * q.sqrt().as_matrix())).unwrap();
        for t in [0.0, 0.3, 0.5, 0.8, 1.0] {
            let r = geodesic_point(MetricKind::BuresWasserstein, &p, &q, t).unwrap();
            let u = unitary_factor(&p, &q, &r).unwrap();
            assert!(
                relative_frobenius(&u.as_matrix().adjoint(), pol.as_matrix()) < 1e-8,
                "d={d} t={t}"
            );
        }
    }
}

#[test]
fn polar_fidelity_anchors() {
    let (p, q) = (p0(), q0());
    assert!((polar_fidelity(&p, &q, 1.0).unwrap() - UHLMANN_P0Q0).abs() < 1e-13);
    assert!((polar_fidelity(&p, &q, 0.0).unwrap() - HOLEVO_P0Q0).abs() < 1e-13);
    assert!((polar_fidelity(&p, &q, -1.0).unwrap() - MATSUMOTO_P0Q0).abs() < 1e-13);
    let mut rng = TrialRng::new(7, 0);
    for d in 2..6 {
        let p = rng.positive(d, 1e4);
        let q = rng.positive(d, 1e4);
        for x in [-1.0, -0.4, 0.0, 0.6, 1.0] {
            let (a, b) = polar_fidelity_parts(&p, &q, x).unwrap();
            assert!(a.im.abs() < 1e-10 && b.im.abs() < 1e-10);
            assert!(close(a, polar_closed_form(&p, &q, x).unwrap(), 1e-9));
            assert!(close(b, polar_closed_form(&q, &p, x).unwrap().conj(), 1e-9));
        }
    }
}

#[test]
fn interior_fidelity_examples() {
    let (p, q) = (p0(), q0());
    let r = random_positive_for_tests(2);
    let single = interior_fidelity(&p, &q, &BaseEnsemble::single(r.clone())).unwrap();
    assert!(close(
        single.into(),
        fidelity_at(&p, &q, &r).unwrap(),
        1e-15
    ));

    let pq = BaseEnsemble::new(vec![p.clone(), q.clone()], vec![0.5, 0.5]).unwrap();
    let f = interior_fidelity(&p, &q, &pq).unwrap();
    assert!((f.re - UHLMANN_P0Q0).abs() < 1e-13 && f.im.abs() < 1e-13);

    let pinv = BaseEnsemble::new(vec![p.clone(), p.inverse()], vec![0.5, 0.5]).unwrap();
    let f = interior_fidelity(&p, &q, &pinv).unwrap();
    let expected = (UHLMANN_P0Q0 + MATSUMOTO_P0Q0) / 2.0;
    assert!((f.re - expected).abs() < 1e-13);
    assert!((f.re - 0.930617).abs() < 1e-6);

    assert!(BaseEnsemble::new(vec![p.clone(), q.clone()], vec![0.5, 0.6]).is_err());
    assert!(BaseEnsemble::new(vec![p.clone()], vec![0.5, 0.5]).is_err());
}

#[test]
fn mean_unitary_factor_lies_in_the_unit_ball() {
    let mut rng = TrialRng::new(8, 0);
    for d in 2..6 {
        let p = rng.positive(d, 1e4);
        let q = rng.positive(d, 1e4);
        let bases: Vec<_> = (0..4).map(|_| rng.positive(d, 1e4)).collect();
        let ens = BaseEnsemble::new(bases, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let v = mean_unitary_factor(&p, &q, &ens).unwrap();
        let gram = HermitianMatrix::from_hermitian_part(&(v.adjoint() * &v));
        let norm = gram.eigenvalues().unwrap().last().unwrap().sqrt();
        assert!(norm <= 1.0 + 1e-12);
        let via_v = trace(&(q.sqrt().as_matrix() * &v * p.sqrt().as_matrix()));
        let sum: Complex64 = interior_fidelity(&p, &q, &ens).unwrap().into();
        assert!(close(via_v, sum, 1e-10));
    }
}

#[test]
fn fidelity_ordering_matsumoto_holevo_uhlmann() {
    let mut rng = TrialRng::new(9, 0);
    for d in 2..8 {
        let p = rng.positive(d, 1e4);
        let q = rng.positive(d, 1e4);
        let (m, h, u) = (
            matsumoto(&p, &q).unwrap(),
            holevo(&p, &q).unwrap(),
            uhlmann(&p, &q).unwrap(),
        );
        assert!(
            m <= h * (1.0 + 1e-12) && h <= u * (1.0 + 1e-12),
            "{m} {h} {u}"
        );
    }
}

#[test]
fn commuting_base_gives_a_real_value() {
    let mut rng = TrialRng::new(10, 0);
    for d in 2..6 {
        let p = rng.positive(d, 1e4);
        let q = rng.positive(d, 1e4);
        for r in [p.pow(0.7).unwrap(), p.inverse(), q.pow(-0.3).unwrap()] {
            let f = fidelity_at(&p, &q, &r).unwrap();
            assert!(f.im.abs() < 1e-10, "{f}");
        }
    }
}

#[test]
fn gamma_commuting_triples_give_matsumoto() {
    let mut rng = TrialRng::new(11, 0);
    for d in 2..6 {
        let r = rng.positive(d, 1e3);
        let w = rng.unitary(d);
        let ri = r.inv_sqrt();
        let build = |diag: Vec<f64>| {
            let dm = HermitianMatrix::from_diagonal(&diag);
            PositiveMatrix::new(dm.congruence(&(ri.as_matrix() * w.as_matrix())).unwrap()).unwrap()
        };
        let p = build(rng.diagonal_positive(d, 0.1, 2.0));
        let q = build(rng.diagonal_positive(d, 0.1, 2.0));
        let prq = p.as_matrix() * r.as_matrix() * q.as_matrix();
        let qrp = q.as_matrix() * r.as_matrix() * p.as_matrix();
        assert!(relative_frobenius(&prq, &qrp) < 1e-10);
        let f = fidelity_at(&p, &q, &r).unwrap();
        assert!(close(f, c(matsumoto(&p, &q).unwrap()), 1e-8), "d={d}");
    }
}

#[test]
fn appendix_style_algebraic_properties() {
    let mut rng = TrialRng::new(12, 0);
    let (p, q, r) = triple(&mut rng, 3);
    let f = fidelity_at(&p, &q, &r).unwrap();
    // Conjugate symmetry.
    assert!(close(fidelity_at(&q, &p, &r).unwrap(), f.conj(), 1e-10));
    // Unitary invariance and contravariance.
    let u = rng.unitary(3);
    let um = u.as_matrix();
    let conj = |m: &PositiveMatrix| m.congruence(um).unwrap();
    let unconj = |m: &PositiveMatrix| m.congruence(&um.adjoint()).unwrap();
    assert!(close(
        fidelity_at(&conj(&p), &conj(&q), &conj(&r)).unwrap(),
        f,
        1e-9
    ));
    assert!(close(
        fidelity_at(&p, &q, &conj(&r)).unwrap(),
        fidelity_at(&unconj(&p), &unconj(&q), &r).unwrap(),
        1e-9
    ));
    // Scaling.
    let scaled = fidelity_at(
        &p.scale(2.0).unwrap(),
        &q.scale(0.3).unwrap(),
        &r.scale(5.0).unwrap(),
    )
    .unwrap();
    assert!(close(scaled, f * 0.6f64.sqrt(), 1e-10));
    // Bound by Uhlmann.
    assert!(f.norm() <= uhlmann(&p, &q).unwrap() * (1.0 + 1e-12));
    // Kronecker products and direct sums.
    let (a, b, s) = triple(&mut rng, 2);
    let kp = PositiveMatrix::from_matrix(kron(p.as_matrix(), a.as_matrix())).unwrap();
    let kq = PositiveMatrix::from_matrix(kron(q.as_matrix(), b.as_matrix())).unwrap();
    let kr = PositiveMatrix::from_matrix(kron(r.as_matrix(), s.as_matrix())).unwrap();
    let g = fidelity_at(&a, &b, &s).unwrap();
    assert!(close(fidelity_at(&kp, &kq, &kr).unwrap(), f * g, 1e-9));
    let dp = PositiveMatrix::from_matrix(direct_sum(p.as_matrix(), a.as_matrix())).unwrap();
    let dq = PositiveMatrix::from_matrix(direct_sum(q.as_matrix(), b.as_matrix())).unwrap();
    let dr = PositiveMatrix::from_matrix(direct_sum(r.as_matrix(), s.as_matrix())).unwrap();
    assert!(close(fidelity_at(&dp, &dq, &dr).unwrap(), f + g, 1e-9));
}

#[test]
fn quantization_on_simultaneously_diagonal_triples() {
    let mut rng = TrialRng::new(13, 0);
    for d in 2..6 {
        let a = rng.diagonal_positive(d, 0.05, 1.0);
        let b = rng.diagonal_positive(d, 0.05, 1.0);
        let rr = rng.diagonal_positive(d, 0.05, 3.0);
        let f = fidelity_at(
            &HermitianMatrix::from_diagonal(&a),
            &HermitianMatrix::from_diagonal(&b),
            &PositiveMatrix::from_diagonal(&rr).unwrap(),
        )
        .unwrap();
        assert!(close(f, c(classical_fidelity(&a, &b).unwrap()), 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_forms_agree(seed in any::<u64>(), d in 2usize..9) {
        let mut rng = TrialRng::new(seed, 0);
        let (p, q, r) = triple(&mut rng, d);
        let reference = generalized_fidelity(&p, &q, &r, FidelityForm::Definition).unwrap();
        let scale = reference.complex().norm().max((p.trace() * q.trace()).sqrt());
        for form in [FidelityForm::PolarUnitary, FidelityForm::GeometricMean] {
            let v = generalized_fidelity(&p, &q, &r, form).unwrap();
            prop_assert_eq!(v.form, form);
            prop_assert!((v.complex() - reference.complex()).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn bures_frobenius_form_matches(seed in any::<u64>(), d in 2usize..9) {
        let mut rng = TrialRng::new(seed, 1);
        let (p, q, r) = triple(&mut rng, d);
        let f = generalized_fidelity(&p, &q, &r, FidelityForm::Definition).unwrap();
        let b = p.trace() + q.trace() - 2.0 * f.re();
        let fro = generalized_bures_sq_frobenius(&p, &q, &r).unwrap();
        prop_assert!((b - fro).abs() <= 1e-8 * (p.trace() + q.trace()));
    }

    #[test]
    fn modulus_is_bounded_by_uhlmann(seed in any::<u64>(), d in 2usize..7) {
        let mut rng = TrialRng::new(seed, 2);
        let (p, q, r) = triple(&mut rng, d);
        let f = fidelity_at(&p, &q, &r).unwrap();
        prop_assert!(f.norm() <= uhlmann(&p, &q).unwrap() * (1.0 + 1e-10));
    }
}
