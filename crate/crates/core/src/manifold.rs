//! Riemannian structures on positive definite matrices.
//!
//! | metric | inner product at `P` | geodesic |
//! |---|---|---|
//! | Bures-Wasserstein | `Tr[L_P(X) P L_P(Y)]` | `[(1-t)I + tS] P [(1-t)I + tS]`, `S = P⁻¹ # Q` |
//! | affine-invariant | `Tr[P⁻¹ X P⁻¹ Y]` | `P #_t Q` |
//! | Euclidean | `Tr[XY]` | `(1-t)P + tQ` |
//!
//! `L_P(X)` is the solution of `YP + PY = X`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::linalg::{
    c, geometric_mean, lyapunov_solve, psd_noise_floor, symmetrized_division, trace,
    weighted_geometric_mean, CMatrix, HermitianMatrix, PositiveMatrix,
};

/// Smallest admissible eigenvalue of `I + L_P(X)` in the Bures-Wasserstein exponential map.
pub const BW_EXP_DOMAIN_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    BuresWasserstein,
    AffineInvariant,
    Euclidean,
}

impl MetricKind {
    pub const ALL: [MetricKind; 3] = [
        MetricKind::BuresWasserstein,
        MetricKind::AffineInvariant,
        MetricKind::Euclidean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::BuresWasserstein => "bures-wasserstein",
            MetricKind::AffineInvariant => "affine-invariant",
            MetricKind::Euclidean => "euclidean",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bw" | "bures-wasserstein" | "bures" => Ok(MetricKind::BuresWasserstein),
            "ai" | "affine-invariant" | "affine" => Ok(MetricKind::AffineInvariant),
            "euc" | "euclidean" => Ok(MetricKind::Euclidean),
            other => Err(Error::InvalidArgument(format!(
                "unknown metric {other:?} (expected bw, ai or euc)"
            ))),
        }
    }
}

/// Hermitian direction at a base point, tagged with the metric that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub base: PositiveMatrix,
    pub direction: HermitianMatrix,
    pub metric: MetricKind,
}

impl TangentVector {
    pub fn new(
        metric: MetricKind,
        base: PositiveMatrix,
        direction: HermitianMatrix,
    ) -> Result<Self> {
        check_dims(base.dim(), direction.dim())?;
        Ok(Self {
            base,
            direction,
            metric,
        })
    }

    /// `<X, X>_P` in the tagged metric.
    pub fn norm_sq(&self) -> Result<f64> {
        inner_product(self.metric, &self.base, &self.direction, &self.direction)
    }

    /// `<X, Y>_P` against another vector at the same base.
    pub fn inner(&self, other: &TangentVector) -> Result<f64> {
        inner_product(self.metric, &self.base, &self.direction, &other.direction)
    }
}

/// Riemannian inner product `<X, Y>_P`.
///
/// For Bures-Wasserstein this is the real part of `Tr[L_P(X) P L_P(Y)]`, which
/// equals `Tr[X L_P(Y)] / 2`; the imaginary part cancels against the mirrored
/// term `Tr[L_P(X) L_P(Y) P]` and is not part of the metric.
pub fn inner_product(
    metric: MetricKind,
    p: &PositiveMatrix,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<f64> {
    check_dims(p.dim(), x.dim())?;
    check_dims(p.dim(), y.dim())?;
    match metric {
        MetricKind::Euclidean => x.trace_product(y),
        MetricKind::AffineInvariant => {
            let pinv = p.inverse();
            let lhs = pinv.as_matrix() * x.as_matrix();
            let rhs = pinv.as_matrix() * y.as_matrix();
            Ok(trace(&(lhs * rhs)).re)
        }
        MetricKind::BuresWasserstein => {
            let lx = lyapunov_solve(p, x)?;
            let ly = lyapunov_solve(p, y)?;
            Ok(trace(&(lx.as_matrix() * p.as_matrix() * ly.as_matrix())).re)
        }
    }
}

fn domain(metric: MetricKind, operation: &'static str, reason: String) -> Error {
    Error::Domain {
        operation,
        reason: format!("{metric}: {reason}"),
    }
}

/// `Exp_P(X)`.
///
/// The Bures-Wasserstein map `(I + L)P(I + L)` with `L = L_P(X)` is only used
/// while `I + L` stays positive definite; the Euclidean map `P + X` needs the sum
/// to be positive definite. The affine-invariant map is global.
pub fn exp_map(
    metric: MetricKind,
    p: &PositiveMatrix,
    x: &HermitianMatrix,
) -> Result<PositiveMatrix> {
    check_dims(p.dim(), x.dim())?;
    match metric {
        MetricKind::Euclidean => PositiveMatrix::new(p.add(x)?)
            .map_err(|e| domain(metric, "exponential map", e.to_string())),
        MetricKind::AffineInvariant => {
            let inner = symmetrized_division(x, p)?.map_spectrum(f64::exp)?;
            let out = inner.congruence(p.sqrt().as_matrix())?;
            PositiveMatrix::with_floor(out, 0.0)
                .map_err(|e| domain(metric, "exponential map", e.to_string()))
        }
        MetricKind::BuresWasserstein => {
            let l = lyapunov_solve(p, x)?;
            let shift = l.add(&HermitianMatrix::identity(p.dim()))?;
            bw_congruence(p, &shift, "exponential map")
        }
    }
}

/// `M P M` for Hermitian `M` after checking `λ_min(M) > BW_EXP_DOMAIN_FLOOR`.
fn bw_congruence(
    p: &PositiveMatrix,
    m: &HermitianMatrix,
    operation: &'static str,
) -> Result<PositiveMatrix> {
    let lmin = m.eigenvalues()?[0];
    if !(lmin > BW_EXP_DOMAIN_FLOOR) {
        return Err(domain(
            MetricKind::BuresWasserstein,
            operation,
            format!("I + L_P(X) has smallest eigenvalue {lmin:.3e}, outside the domain of the exponential map"),
        ));
    }
    let out =
        HermitianMatrix::from_hermitian_part(&(m.as_matrix() * p.as_matrix() * m.as_matrix()));
    PositiveMatrix::with_floor(out, 0.0)
        .map_err(|e| domain(MetricKind::BuresWasserstein, operation, e.to_string()))
}

/// `S = P⁻¹ # Q`, the Bures-Wasserstein transport map from `P` to `Q`.
pub fn bw_transport(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<PositiveMatrix> {
    geometric_mean(&p.inverse(), q)
}

/// `Log_P(Q)`.
pub fn log_map(
    metric: MetricKind,
    p: &PositiveMatrix,
    q: &PositiveMatrix,
) -> Result<TangentVector> {
    check_dims(p.dim(), q.dim())?;
    let direction = match metric {
        MetricKind::Euclidean => q.sub(p)?,
        MetricKind::AffineInvariant => {
            let inner = symmetrized_division(q, p)?.map_spectrum(f64::ln)?;
            inner.congruence(p.sqrt().as_matrix())?
        }
        MetricKind::BuresWasserstein => {
            let s = bw_transport(p, q)?;
            let m = s.as_matrix() - CMatrix::identity(p.dim(), p.dim());
            HermitianMatrix::from_hermitian_part(&(&m * p.as_matrix() + p.as_matrix() * &m))
        }
    };
    TangentVector::new(metric, p.clone(), direction)
}

/// Point `γ_PQ(t)` on the geodesic from `P` (t = 0) to `Q` (t = 1).
///
/// Any real `t` is accepted as long as the result stays positive definite; for
/// Bures-Wasserstein this means `(1-t)I + tS` must be positive definite.
pub fn geodesic_point(
    metric: MetricKind,
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    t: f64,
) -> Result<PositiveMatrix> {
    check_dims(p.dim(), q.dim())?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "geodesic parameter must be finite, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(p.clone());
    }
    if t == 1.0 {
        return Ok(q.clone());
    }
    match metric {
        MetricKind::Euclidean => {
            let m = p.as_matrix() * c(1.0 - t) + q.as_matrix() * c(t);
            PositiveMatrix::with_floor(HermitianMatrix::from_hermitian_part(&m), 0.0)
                .map_err(|e| domain(metric, "geodesic", e.to_string()))
        }
        MetricKind::AffineInvariant => weighted_geometric_mean(p, q, t),
        MetricKind::BuresWasserstein => {
            let s = bw_transport(p, q)?;
            let m = HermitianMatrix::from_hermitian_part(
                &(CMatrix::identity(p.dim(), p.dim()) * c(1.0 - t) + s.as_matrix() * c(t)),
            );
            bw_congruence(p, &m, "geodesic")
        }
    }
}

/// `Tr[√(P^{1/2} Q P^{1/2})]`.
pub(crate) fn sqrt_fidelity_trace(p: &HermitianMatrix, q: &HermitianMatrix) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    let ps = p.psd_sqrt()?;
    let inner = q.congruence(ps.as_matrix())?;
    let eig = inner.eigenvalues()?;
    let cut = psd_noise_floor(&eig);
    Ok(eig.iter().filter(|l| **l > cut).map(|l| l.sqrt()).sum())
}

/// Squared geodesic distance `d²(P, Q)`.
pub fn squared_distance(metric: MetricKind, p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    match metric {
        MetricKind::Euclidean => Ok(q.sub(p)?.frobenius().powi(2)),
        MetricKind::AffineInvariant => {
            let eig = symmetrized_division(q, p)?.eigenvalues()?;
            Ok(eig.iter().map(|l| l.ln().powi(2)).sum())
        }
        MetricKind::BuresWasserstein => {
            let f = sqrt_fidelity_trace(p, q)?;
            Ok((p.trace() + q.trace() - 2.0 * f).max(0.0))
        }
    }
}

pub fn distance(metric: MetricKind, p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
    Ok(squared_distance(metric, p, q)?.sqrt())
}
