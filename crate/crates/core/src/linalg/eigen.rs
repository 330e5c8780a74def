//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies a
//! real Jacobi rotation, so the accumulated transform stays unitary. Rotations
//! are skipped when `|a_pq| <= eps * sqrt(|a_pp| |a_qq|)`, which gives small
//! eigenvalues of positive definite input high relative accuracy.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Rotation budget per unit of `d^2`; a converged solve usually needs fewer than 6.
pub const ROTATIONS_PER_DIM_SQ: usize = 30;

/// Diagonalizes the Hermitian matrix `a`, returning ascending eigenvalues and the
/// matching unitary matrix of column eigenvectors.
///
/// Only the Hermitian part of `a` is read; callers are expected to have checked
/// the symmetry already.
pub(crate) fn jacobi_eigh(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    if n == 1 {
        return Ok((vec![m[(0, 0)].re], v));
    }

    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let floor = scale * 1e-300;
    let cap = ROTATIONS_PER_DIM_SQ * n * n;
    let mut rotations = 0usize;

    loop {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                if mag <= f64::EPSILON * (app.abs() * aqq.abs()).sqrt() || mag <= floor {
                    if mag != 0.0 {
                        m[(p, q)] = Complex64::new(0.0, 0.0);
                        m[(q, p)] = Complex64::new(0.0, 0.0);
                    }
                    continue;
                }
                rotations += 1;
                if rotations > cap {
                    return Err(Error::NonConvergence {
                        what: "Jacobi eigensolver",
                        iterations: rotations - 1,
                        residual: off_diagonal_norm(&m),
                    });
                }
                rotate(&mut m, &mut v, p, q, apq, mag, app, aqq);
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((eigenvalues, eigenvectors))
}

#[allow(clippy::too_many_arguments)]
fn rotate(
    m: &mut CMatrix,
    v: &mut CMatrix,
    p: usize,
    q: usize,
    apq: Complex64,
    mag: f64,
    app: f64,
    aqq: f64,
) {
    let n = m.nrows();
    // phase = e^{-i phi} where a_pq = |a_pq| e^{i phi}
    let phase = apq.conj() / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = [[c, s], [-s phase, c phase]] on (p, q); A <- J* A J, V <- V J.
    let jqp = -phase * s;
    let jqq = phase * c;
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c + akq * jqp;
        m[(k, q)] = akp * s + akq * jqq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c + aqk * jqp.conj();
        m[(q, k)] = apk * s + aqk * jqq.conj();
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
    m[(p, p)] = Complex64::new(app - t * mag, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
}

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}
