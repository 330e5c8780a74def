use super::*;
use nalgebra::SymmetricEigen;
use proptest::prelude::*;

fn real(d: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| c(entries[i * d + j]))
}

fn p0() -> PositiveMatrix {
    PositiveMatrix::from_diagonal(&[0.75, 0.25]).unwrap()
}

fn q0() -> PositiveMatrix {
    PositiveMatrix::from_real(2, &[0.5, 0.25, 0.25, 0.5]).unwrap()
}

fn assert_close(a: &CMatrix, b: &CMatrix, tol: f64) {
    let err = frobenius(&(a - b));
    assert!(
        err <= tol,
        "||a - b||_F = {err:e} > {tol:e}\na = {a}\nb = {b}"
    );
}

#[test]
fn identity_spectrum() {
    let s = spectral_decompose(&HermitianMatrix::identity(2)).unwrap();
    assert_eq!(s.eigenvalues, vec![1.0, 1.0]);
    assert_close(s.eigenvectors.as_matrix(), &CMatrix::identity(2, 2), 0.0);
}

#[test]
fn diagonal_spectrum_keeps_standard_basis() {
    let s = spectral_decompose(&HermitianMatrix::from_diagonal(&[0.75, 0.25])).unwrap();
    assert_eq!(s.eigenvalues, vec![0.25, 0.75]);
    let v = s.eigenvectors.as_matrix();
    assert_eq!(v[(1, 0)].norm(), 1.0);
    assert_eq!(v[(0, 1)].norm(), 1.0);
}

#[test]
fn two_by_two_closed_form_spectrum() {
    let s = spectral_decompose(&q0()).unwrap();
    assert!((s.eigenvalues[0] - 0.25).abs() < 1e-15);
    assert!((s.eigenvalues[1] - 0.75).abs() < 1e-15);
    let v = s.eigenvectors.as_matrix();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // Eigenvectors are fixed up to a phase.
    assert!((v[(0, 0)] + v[(1, 0)]).norm() < 1e-14);
    assert!((v[(0, 1)] - v[(1, 1)]).norm() < 1e-14);
    assert!((v[(0, 0)].norm() - r).abs() < 1e-14);
}

#[test]
fn rank_one_projector_spectrum() {
    let psi = random_pure_state(4, 3);
    let proj = HermitianMatrix::from_hermitian_part(&(&psi * psi.adjoint()));
    let s = proj.eigh().unwrap();
    for l in &s.eigenvalues[..3] {
        assert!(l.abs() < 1e-14);
    }
    assert!((s.eigenvalues[3] - 1.0).abs() < 1e-14);
    assert_close(s.reconstruct().as_matrix(), proj.as_matrix(), 1e-14);
}

#[test]
fn jacobi_agrees_with_nalgebra_on_real_symmetric_input() {
    let mut rng = TrialRng::new(11, 0);
    for d in 2..9 {
        let a = nalgebra::DMatrix::<f64>::from_fn(d, d, |_, _| rng.uniform(-1.0, 1.0));
        let sym = &a + a.transpose();
        let oracle = SymmetricEigen::new(sym.clone());
        let mut expected: Vec<f64> = oracle.eigenvalues.iter().copied().collect();
        expected.sort_by(f64::total_cmp);
        let h = HermitianMatrix::new(sym.map(c)).unwrap();
        let got = h.eigenvalues().unwrap();
        for (g, e) in got.iter().zip(&expected) {
            assert!((g - e).abs() < 1e-12, "d={d}: {got:?} vs {expected:?}");
        }
    }
}

#[test]
fn jacobi_reconstructs_complex_input() {
    let mut rng = TrialRng::new(5, 0);
    for d in [1, 2, 3, 5, 8, 16] {
        let h = rng.hermitian(d);
        let s = h.eigh().unwrap();
        assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert!(relative_frobenius(s.reconstruct().as_matrix(), h.as_matrix()) < 1e-12);
        let v = s.eigenvectors.as_matrix();
        assert_close(&(v.adjoint() * v), &CMatrix::identity(d, d), 1e-12);
    }
}

#[test]
fn hermitian_validation() {
    assert!(matches!(
        HermitianMatrix::new(real(2, &[1.0, 2.0, 0.0, 1.0])),
        Err(Error::NotHermitian { .. })
    ));
    assert!(matches!(
        HermitianMatrix::new(CMatrix::zeros(2, 3)),
        Err(Error::NotSquare { rows: 2, cols: 3 })
    ));
    assert!(HermitianMatrix::new(real(2, &[1.0, 2.0, 2.0 + 1e-13, 1.0])).is_ok());
}

#[test]
fn positivity_floor() {
    assert!(matches!(
        PositiveMatrix::from_diagonal(&[1.0, 0.0]),
        Err(Error::NotPositive { .. })
    ));
    assert!(PositiveMatrix::from_diagonal(&[1.0, 1e-13]).is_err());
    assert!(PositiveMatrix::from_diagonal(&[1.0, 1e-11]).is_ok());
    let h = HermitianMatrix::from_diagonal(&[1.0, 1e-13]);
    assert!(PositiveMatrix::with_floor(h.clone(), 0.0).is_ok());
    assert!(PositiveMatrix::with_floor(h, 1e-12).is_err());
}

#[test]
fn unitary_validation() {
    let u = random_unitary(4, 1);
    assert!(UnitaryMatrix::new(u.as_matrix().clone()).is_ok());
    assert!(matches!(
        UnitaryMatrix::new(CMatrix::identity(2, 2) * c(1.01)),
        Err(Error::NotUnitary { .. })
    ));
}

#[test]
fn spectral_function_examples() {
    let p = PositiveMatrix::from_diagonal(&[0.25, 0.75]).unwrap();
    let s = apply_spectral_fn(&p, SpectralFn::Sqrt).unwrap();
    assert_close(
        s.as_matrix(),
        HermitianMatrix::from_diagonal(&[0.5, 0.75f64.sqrt()]).as_matrix(),
        1e-15,
    );
    let i = PositiveMatrix::identity(3);
    assert_close(
        apply_spectral_fn(&i, SpectralFn::Sqrt).unwrap().as_matrix(),
        &CMatrix::identity(3, 3),
        0.0,
    );
    let four = PositiveMatrix::from_diagonal(&[4.0]).unwrap();
    assert_eq!(
        apply_spectral_fn(&four, SpectralFn::Pow(-1.0))
            .unwrap()
            .as_matrix()[(0, 0)],
        c(0.25)
    );
    assert!(matches!(
        apply_spectral_fn(&four, SpectralFn::Pow(f64::NAN)),
        Err(Error::InvalidArgument(_))
    ));
    let l = apply_spectral_fn(&p, SpectralFn::Log).unwrap();
    let back = l.map_spectrum(f64::exp).unwrap();
    assert_close(back.as_matrix(), p.as_matrix(), 1e-15);
}

#[test]
fn polar_factor_examples() {
    let u = random_unitary(3, 9);
    assert_close(
        polar_factor(u.as_matrix()).unwrap().as_matrix(),
        u.as_matrix(),
        1e-13,
    );
    let p = random_positive(3, 9, 1e4);
    assert_close(
        polar_factor(p.as_matrix()).unwrap().as_matrix(),
        &CMatrix::identity(3, 3),
        1e-12,
    );
    let a = p0().sqrt().as_matrix() * q0().sqrt().as_matrix();
    let det = polar_factor(&a).unwrap().determinant();
    assert!((det - c(1.0)).norm() < 1e-12);
    assert!(matches!(
        polar_factor(&real(2, &[1.0, 2.0, 2.0, 4.0])),
        Err(Error::Singular { .. })
    ));
}

#[test]
fn polar_factor_recovers_modulus() {
    let mut rng = TrialRng::new(21, 0);
    for d in 2..7 {
        let a = rng.ginibre(d);
        let u = polar_factor(&a).unwrap();
        let modulus = HermitianMatrix::from_hermitian_part(&(a.adjoint() * &a))
            .psd_sqrt()
            .unwrap();
        assert!(relative_frobenius(&(u.as_matrix() * modulus.as_matrix()), &a) < 1e-12);
    }
}

#[test]
fn polar_lemma_identities() {
    let mut rng = TrialRng::new(4, 0);
    for d in 2..6 {
        let p = rng.positive(d, 1e4);
        let q = rng.positive(d, 1e4);
        let (ps, qs) = (p.sqrt(), q.sqrt());
        let u = polar_factor(&(ps.as_matrix() * qs.as_matrix())).unwrap();
        let um = u.as_matrix();
        let pqp = HermitianMatrix::from_hermitian_part(
            &(ps.as_matrix() * q.as_matrix() * ps.as_matrix()),
        )
        .psd_sqrt()
        .unwrap();
        // P^{1/2} Q^{1/2} = U √(Q^{1/2} P Q^{1/2})
        let qpq = HermitianMatrix::from_hermitian_part(
            &(qs.as_matrix() * p.as_matrix() * qs.as_matrix()),
        )
        .psd_sqrt()
        .unwrap();
        assert!(
            relative_frobenius(
                &(um.adjoint() * ps.as_matrix() * qs.as_matrix()),
                qpq.as_matrix()
            ) < 1e-10
        );
        // Q^{1/2} P^{1/2} U = √(Q^{1/2} P Q^{1/2})
        assert!(
            relative_frobenius(&(qs.as_matrix() * ps.as_matrix() * um), qpq.as_matrix()) < 1e-10
        );
        // P^{1/2} Q^{1/2} U* = √(P^{1/2} Q P^{1/2})
        assert!(
            relative_frobenius(
                &(ps.as_matrix() * qs.as_matrix() * um.adjoint()),
                pqp.as_matrix()
            ) < 1e-10
        );
        // U √(Q^{1/2} P Q^{1/2}) U* = √(P^{1/2} Q P^{1/2})
        assert!(
            relative_frobenius(&(um * qpq.as_matrix() * um.adjoint()), pqp.as_matrix()) < 1e-10
        );
        // U* = Pol(Q^{1/2} P^{1/2})
        let v = polar_factor(&(qs.as_matrix() * ps.as_matrix())).unwrap();
        assert!(relative_frobenius(&um.adjoint(), v.as_matrix()) < 1e-10);
        // Tr[P^{1/2} Q^{1/2} U*] = F^U(P, Q)
        let tr = trace(&(ps.as_matrix() * qs.as_matrix() * um.adjoint()));
        assert!((tr.re - pqp.trace()).abs() < 1e-10 * pqp.trace() && tr.im.abs() < 1e-10);
    }
}

#[test]
fn geometric_mean_examples() {
    let a = random_positive(3, 2, 1e3);
    assert_close(
        geometric_mean(&a, &a).unwrap().as_matrix(),
        a.as_matrix(),
        1e-12,
    );
    let x = PositiveMatrix::from_diagonal(&[1.0, 4.0]).unwrap();
    let y = PositiveMatrix::from_diagonal(&[4.0, 1.0]).unwrap();
    assert_close(
        geometric_mean(&x, &y).unwrap().as_matrix(),
        HermitianMatrix::from_diagonal(&[2.0, 2.0]).as_matrix(),
        1e-14,
    );
    let m = geometric_mean(&p0(), &q0()).unwrap();
    assert!((m.trace() - 0.9258200997725512).abs() < 1e-14);
    assert!(matches!(
        geometric_mean(&x, &PositiveMatrix::identity(3)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn geometric_mean_solves_riccati_equation() {
    let mut rng = TrialRng::new(8, 0);
    for d in 2..7 {
        let a = rng.positive(d, 1e4);
        let b = rng.positive(d, 1e4);
        let x = geometric_mean(&a, &b).unwrap();
        let rhs = x.as_matrix() * a.inverse().as_matrix() * x.as_matrix();
        assert!(relative_frobenius(&rhs, b.as_matrix()) < 1e-9);
        let y = geometric_mean(&b, &a).unwrap();
        assert!(relative_frobenius(x.as_matrix(), y.as_matrix()) < 1e-9);
        let inv = geometric_mean(&a.inverse(), &b.inverse()).unwrap();
        assert!(relative_frobenius(x.inverse().as_matrix(), inv.as_matrix()) < 1e-9);
    }
}

#[test]
fn weighted_geometric_mean_examples() {
    let a = random_positive(3, 12, 1e3);
    let b = random_positive(3, 13, 1e3);
    assert_close(
        weighted_geometric_mean(&a, &b, 0.0).unwrap().as_matrix(),
        a.as_matrix(),
        1e-12,
    );
    assert!(
        relative_frobenius(
            weighted_geometric_mean(&a, &b, 1.0).unwrap().as_matrix(),
            b.as_matrix()
        ) < 1e-12
    );
    assert!(
        relative_frobenius(
            weighted_geometric_mean(&a, &b, 0.5).unwrap().as_matrix(),
            geometric_mean(&a, &b).unwrap().as_matrix()
        ) < 1e-15
    );
    let one = PositiveMatrix::identity(2);
    let d49 = PositiveMatrix::from_diagonal(&[4.0, 9.0]).unwrap();
    assert_close(
        weighted_geometric_mean(&one, &d49, 0.5)
            .unwrap()
            .as_matrix(),
        HermitianMatrix::from_diagonal(&[2.0, 3.0]).as_matrix(),
        1e-14,
    );
}

#[test]
fn symmetrized_division_examples() {
    let h = random_hermitian(3, 4);
    assert_close(
        symmetrized_division(&h, &PositiveMatrix::identity(3))
            .unwrap()
            .as_matrix(),
        h.as_matrix(),
        1e-15,
    );
    let four = PositiveMatrix::from_diagonal(&[4.0]).unwrap();
    assert_eq!(
        symmetrized_division(&four, &four).unwrap().as_matrix()[(0, 0)],
        c(1.0)
    );
    let m = symmetrized_division(&q0(), &p0()).unwrap();
    let expected = real(2, &[2.0 / 3.0, 1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt(), 2.0]);
    assert_close(m.as_matrix(), &expected, 1e-14);
}

#[test]
fn lyapunov_examples() {
    let x = random_hermitian(3, 5);
    assert_close(
        lyapunov_solve(&PositiveMatrix::identity(3), &x)
            .unwrap()
            .as_matrix(),
        &(x.as_matrix() * c(0.5)),
        1e-15,
    );
    let p = random_positive(3, 5, 1e3);
    assert_eq!(
        frobenius(
            lyapunov_solve(&p, &HermitianMatrix::zeros(3))
                .unwrap()
                .as_matrix()
        ),
        0.0
    );
    let d13 = PositiveMatrix::from_diagonal(&[1.0, 3.0]).unwrap();
    let x = HermitianMatrix::from_real(2, &[2.0, 4.0, 4.0, 6.0]).unwrap();
    assert_close(
        lyapunov_solve(&d13, &x).unwrap().as_matrix(),
        &real(2, &[1.0, 1.0, 1.0, 1.0]),
        1e-15,
    );
}

#[test]
fn random_positive_is_deterministic_and_capped() {
    let a = random_positive(2, 7, 1e4);
    let b = random_positive(2, 7, 1e4);
    assert_eq!(a.as_matrix(), b.as_matrix());
    for seed in 0..1000 {
        let p = random_positive(3, seed, 1e4);
        assert!(p.eigenvalues()[0] > 0.0);
        let e = p.hermitian().eigenvalues().unwrap();
        assert!(e[2] / e[0] <= 1e4, "seed {seed}: cond {}", e[2] / e[0]);
    }
    let flat = random_positive(3, 1, 1.0);
    assert!(flat.condition_number() <= 1.0 + 1e-12);
}

#[test]
fn random_density_has_unit_trace() {
    let a = random_density(4, 3);
    assert_eq!(a.as_matrix(), random_density(4, 3).as_matrix());
    assert!((a.trace() - 1.0).abs() < 1e-12);
    assert!(a.eigenvalues()[0] > 0.0);
}

#[test]
fn trial_streams_differ() {
    let a = TrialRng::new(1, 0).ginibre(2);
    let b = TrialRng::new(1, 1).ginibre(2);
    assert_ne!(a, b);
}

#[test]
fn kron_and_direct_sum_shapes() {
    let a = random_hermitian(2, 1).into_matrix();
    let b = random_hermitian(3, 2).into_matrix();
    assert_eq!(kron(&a, &b).shape(), (6, 6));
    let s = direct_sum(&a, &b);
    assert_eq!(s.shape(), (5, 5));
    assert!((trace(&s) - trace(&a) - trace(&b)).norm() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt_squares_back(seed in any::<u64>(), d in 1usize..9) {
        let p = random_positive(d, seed, 1e6);
        let s = p.sqrt();
        prop_assert!(relative_frobenius(&(s.as_matrix() * s.as_matrix()), p.as_matrix()) < 1e-10);
    }

    #[test]
    fn lyapunov_residual_is_small(seed in any::<u64>(), d in 1usize..9) {
        let mut rng = TrialRng::new(seed, 0);
        let p = rng.positive(d, 1e6);
        let x = rng.hermitian(d);
        let y = lyapunov_solve(&p, &x).unwrap();
        let lhs = y.as_matrix() * p.as_matrix() + p.as_matrix() * y.as_matrix();
        prop_assert!(relative_frobenius(&lhs, x.as_matrix()) < 1e-10);
    }

    #[test]
    fn spectral_reconstruction(seed in any::<u64>(), d in 1usize..12) {
        let h = random_hermitian(d, seed);
        let s = h.eigh().unwrap();
        prop_assert!(relative_frobenius(s.reconstruct().as_matrix(), h.as_matrix()) < 1e-10);
    }
}
