//! Fidelities between positive matrices.
//!
//! Named fidelities (all real, symmetric, equal to `Tr P` on the diagonal):
//!
//! * Uhlmann `F^U(P,Q) = Tr[√(P^{1/2} Q P^{1/2})]`
//! * Holevo `F^H(P,Q) = Tr[P^{1/2} Q^{1/2}]`
//! * Matsumoto `F^M(P,Q) = Tr[P # Q]`
//! * log-Euclidean `Tr[exp((ln P + ln Q)/2)]`
//! * z-fidelity `Tr[(P^{1/(2z)} Q^{1/(2z)})^z]`
//!
//! The base-dependent fidelity
//!
//! ```text
//! F_R(P,Q) = Tr[√(R^{1/2} P R^{1/2}) R⁻¹ √(R^{1/2} Q R^{1/2})]
//! ```
//!
//! is complex in general. It reduces to `F^U` at `R ∈ {P, Q}`, to `F^H` at
//! `R = I` and to `F^M` at `R ∈ {P⁻¹, Q⁻¹}`. Its real part defines the distance
//! `B_R(P,Q) = Tr[P + Q] - 2 Re F_R(P,Q)`.
//!
//! Some older write-ups label the Matsumoto fidelity `F^U` as well; here `F^U`
//! always means Uhlmann and `F^M` Matsumoto.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::linalg::{
    c, frobenius, geometric_mean, polar_factor, psd_noise_floor, trace, CMatrix, ComplexScalar,
    HermitianMatrix, PositiveMatrix, UnitaryMatrix,
};
use crate::manifold::sqrt_fidelity_trace;

/// Accepted deviation of a probability vector's sum from 1.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Accepted deviation of a pure state's norm from 1.
pub const UNIT_NORM_TOL: f64 = 1e-10;

/// Bhattacharyya coefficient `Σ √(p_i q_i)`.
pub fn classical_fidelity(p: &[f64], q: &[f64]) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    if let Some(bad) = p.iter().chain(q).find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "classical fidelity needs nonnegative finite entries, got {bad}"
        )));
    }
    Ok(p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum())
}

/// Uhlmann fidelity. Positive semidefinite input is accepted.
pub fn uhlmann(p: &HermitianMatrix, q: &HermitianMatrix) -> Result<f64> {
    sqrt_fidelity_trace(p, q)
}

/// Holevo fidelity. Positive semidefinite input is accepted.
pub fn holevo(p: &HermitianMatrix, q: &HermitianMatrix) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    let ps = p.psd_sqrt()?;
    let qs = q.psd_sqrt()?;
    ps.trace_product(&qs)
}

/// Matsumoto fidelity `Tr[P # Q]`.
pub fn matsumoto(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
    Ok(geometric_mean(p, q)?.trace())
}

/// Log-Euclidean fidelity.
pub fn log_euclidean(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    let avg = p.log().add(&q.log())?.scale(0.5);
    Ok(avg.eigenvalues()?.iter().map(|l| l.exp()).sum())
}

/// z-fidelity, evaluated as `Tr[(P^{1/(4z)} Q^{1/(2z)} P^{1/(4z)})^z]` so that only
/// powers of positive semidefinite matrices appear.
pub fn z_fidelity(p: &HermitianMatrix, q: &HermitianMatrix, z: f64) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "z must be positive and finite, got {z}"
        )));
    }
    let pq = p.psd_pow(1.0 / (4.0 * z))?;
    let qh = q.psd_pow(1.0 / (2.0 * z))?;
    let inner = qh.congruence(pq.as_matrix())?;
    let eig = inner.eigenvalues()?;
    let cut = psd_noise_floor(&eig);
    Ok(eig.iter().filter(|l| **l > cut).map(|l| l.powf(z)).sum())
}

/// Selector for the named fidelities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedFidelity {
    Uhlmann,
    Holevo,
    Matsumoto,
    LogEuclidean,
    Z(f64),
}

impl NamedFidelity {
    pub fn evaluate(self, p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
        match self {
            NamedFidelity::Uhlmann => uhlmann(p, q),
            NamedFidelity::Holevo => holevo(p, q),
            NamedFidelity::Matsumoto => matsumoto(p, q),
            NamedFidelity::LogEuclidean => log_euclidean(p, q),
            NamedFidelity::Z(z) => z_fidelity(p, q, z),
        }
    }
}

impl fmt::Display for NamedFidelity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFidelity::Uhlmann => f.write_str("uhlmann"),
            NamedFidelity::Holevo => f.write_str("holevo"),
            NamedFidelity::Matsumoto => f.write_str("matsumoto"),
            NamedFidelity::LogEuclidean => f.write_str("log-euclidean"),
            NamedFidelity::Z(z) => write!(f, "z={z}"),
        }
    }
}

/// Squared Hellinger-type quantity `Tr[P + Q] - 2F(P,Q)`.
pub fn hellinger_quantity(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    fidelity: NamedFidelity,
) -> Result<f64> {
    Ok(p.trace() + q.trace() - 2.0 * fidelity.evaluate(p, q)?)
}

/// Which formula produced a [`FidelityValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FidelityForm {
    /// `Tr[√(R^{1/2}PR^{1/2}) R⁻¹ √(R^{1/2}QR^{1/2})]`
    Definition,
    /// `Tr[Q^{1/2} U_Q U_P* P^{1/2}]` with `U_X = Pol(X^{1/2} R^{1/2})`
    PolarUnitary,
    /// `Tr[(R⁻¹ # Q) R (R⁻¹ # P)]`
    GeometricMean,
}

impl FidelityForm {
    pub const ALL: [FidelityForm; 3] = [
        FidelityForm::Definition,
        FidelityForm::PolarUnitary,
        FidelityForm::GeometricMean,
    ];
}

impl FromStr for FidelityForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "definition" | "def" => Ok(FidelityForm::Definition),
            "polar" | "polar-unitary" => Ok(FidelityForm::PolarUnitary),
            "geometric" | "geometric-mean" => Ok(FidelityForm::GeometricMean),
            other => Err(Error::InvalidArgument(format!(
                "unknown fidelity form {other:?}"
            ))),
        }
    }
}

/// Complex fidelity value together with the formula that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityValue {
    pub value: ComplexScalar,
    pub form: FidelityForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_tag: Option<String>,
}

impl FidelityValue {
    pub fn complex(&self) -> Complex64 {
        self.value.into()
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn with_base_tag(mut self, tag: impl Into<String>) -> Self {
        self.base_tag = Some(tag.into());
        self
    }
}

/// Polar unitaries `U_P = Pol(P^{1/2} R^{1/2})`, `U_Q = Pol(Q^{1/2} R^{1/2})`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFactors {
    pub u_p: UnitaryMatrix,
    pub u_q: UnitaryMatrix,
}

/// Polar unitary `Pol(P^{1/2} R^{1/2})` of one argument against the base.
pub fn base_polar(p: &PositiveMatrix, r: &PositiveMatrix) -> Result<UnitaryMatrix> {
    check_dims(r.dim(), p.dim())?;
    polar_factor(&(p.sqrt().as_matrix() * r.sqrt().as_matrix()))
}

pub fn polar_factors(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    r: &PositiveMatrix,
) -> Result<PolarFactors> {
    check_dims(p.dim(), q.dim())?;
    Ok(PolarFactors {
        u_p: base_polar(p, r)?,
        u_q: base_polar(q, r)?,
    })
}

/// Unitary factor `U_Q U_P*`; `F_R(P,Q) = Tr[Q^{1/2} U_Q U_P* P^{1/2}]`.
pub fn unitary_factor(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    r: &PositiveMatrix,
) -> Result<UnitaryMatrix> {
    let f = polar_factors(p, q, r)?;
    f.u_q.mul(&f.u_p.adjoint())
}

fn definition_form(
    p: &HermitianMatrix,
    q: &HermitianMatrix,
    r: &PositiveMatrix,
) -> Result<Complex64> {
    let rs = r.sqrt();
    let a = p.congruence(rs.as_matrix())?.psd_sqrt()?;
    let b = q.congruence(rs.as_matrix())?.psd_sqrt()?;
    Ok(trace(
        &(a.as_matrix() * r.inverse().as_matrix() * b.as_matrix()),
    ))
}

fn polar_form(p: &PositiveMatrix, q: &PositiveMatrix, r: &PositiveMatrix) -> Result<Complex64> {
    let f = polar_factors(p, q, r)?;
    let m = q.sqrt().as_matrix()
        * f.u_q.as_matrix()
        * f.u_p.as_matrix().adjoint()
        * p.sqrt().as_matrix();
    Ok(trace(&m))
}

fn geometric_form(p: &PositiveMatrix, q: &PositiveMatrix, r: &PositiveMatrix) -> Result<Complex64> {
    let rinv = r.inverse();
    let gq = geometric_mean(&rinv, q)?;
    let gp = geometric_mean(&rinv, p)?;
    Ok(trace(&(gq.as_matrix() * r.as_matrix() * gp.as_matrix())))
}

/// Base-dependent fidelity `F_R(P,Q)`.
///
/// `P` and `Q` may be rank-deficient; the polar and geometric-mean forms need them
/// positive definite and fall back to [`FidelityForm::Definition`] otherwise. The
/// returned value records the form actually used.
pub fn generalized_fidelity(
    p: &HermitianMatrix,
    q: &HermitianMatrix,
    r: &PositiveMatrix,
    form: FidelityForm,
) -> Result<FidelityValue> {
    check_dims(r.dim(), p.dim())?;
    check_dims(r.dim(), q.dim())?;
    let positive = || positive_pair(p, q);
    let (value, form) = match form {
        FidelityForm::Definition => (definition_form(p, q, r)?, form),
        FidelityForm::PolarUnitary => match positive() {
            Some((pp, qp)) => (polar_form(&pp, &qp, r)?, form),
            None => (definition_form(p, q, r)?, FidelityForm::Definition),
        },
        FidelityForm::GeometricMean => match positive() {
            Some((pp, qp)) => (geometric_form(&pp, &qp, r)?, form),
            None => (definition_form(p, q, r)?, FidelityForm::Definition),
        },
    };
    Ok(FidelityValue {
        value: value.into(),
        form,
        base_tag: None,
    })
}

fn positive_pair(p: &HermitianMatrix, q: &HermitianMatrix) -> Option<(PositiveMatrix, PositiveMatrix)> {
    Some((
        PositiveMatrix::new(p.clone()).ok()?,
        PositiveMatrix::new(q.clone()).ok()?,
    ))
}

/// `F_R(P,Q)` through the polar-unitary form when `P` and `Q` are positive
/// definite, through the defining formula otherwise.
///
/// The defining formula loses accuracy when `R` is close to `P` or `Q` and
/// poorly conditioned; the polar form does not.
pub fn fidelity_at(
    p: &HermitianMatrix,
    q: &HermitianMatrix,
    r: &PositiveMatrix,
) -> Result<Complex64> {
    check_dims(r.dim(), p.dim())?;
    check_dims(r.dim(), q.dim())?;
    match positive_pair(p, q) {
        Some((pp, qp)) => polar_form(&pp, &qp, r),
        None => definition_form(p, q, r),
    }
}

fn require_unit(v: &DVector<Complex64>, name: &str) -> Result<()> {
    let n = v.norm();
    if (n - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::InvalidArgument(format!(
            "{name} must be a unit vector, has norm {n}"
        )));
    }
    Ok(())
}

/// `F_R` between pure states `ψψ*` and `φφ*`:
/// `<ψ,φ><φ,Rψ> / (√<ψ,Rψ> √<φ,Rφ>)`.
pub fn generalized_fidelity_pure(
    psi: &DVector<Complex64>,
    phi: &DVector<Complex64>,
    r: &PositiveMatrix,
) -> Result<ComplexScalar> {
    check_dims(r.dim(), psi.len())?;
    check_dims(r.dim(), phi.len())?;
    require_unit(psi, "psi")?;
    require_unit(phi, "phi")?;
    let rm = r.as_matrix();
    let r_psi = rm * psi;
    let r_phi = rm * phi;
    let overlap = psi.dotc(phi);
    let cross = phi.dotc(&r_psi);
    let fp = psi.dotc(&r_psi).re.sqrt();
    let fq = phi.dotc(&r_phi).re.sqrt();
    Ok((overlap * cross / c(fp * fq)).into())
}

/// `B_R(P,Q) = Tr[P + Q] - 2 Re F_R(P,Q)`.
///
/// Positive definite arguments go through the Frobenius form
/// `‖U_P* P^{1/2} - U_Q* Q^{1/2}‖_F²`, which has no cancellation and vanishes
/// exactly at `P = Q`. Rank-deficient arguments use the trace formula with
/// `Re F_R` averaged over both argument orders, clamped at zero. Both routes are
/// bitwise symmetric in `P` and `Q`.
pub fn generalized_bures_sq(
    p: &HermitianMatrix,
    q: &HermitianMatrix,
    r: &PositiveMatrix,
) -> Result<f64> {
    check_dims(r.dim(), p.dim())?;
    check_dims(r.dim(), q.dim())?;
    if let Some((pp, qp)) = positive_pair(p, q) {
        return generalized_bures_sq_frobenius(&pp, &qp, r);
    }
    let re = (definition_form(p, q, r)?.re + definition_form(q, p, r)?.re) / 2.0;
    Ok((p.trace() + q.trace() - 2.0 * re).max(0.0))
}

/// `b_R(P,Q) = √B_R(P,Q)`.
pub fn generalized_bures(
    p: &HermitianMatrix,
    q: &HermitianMatrix,
    r: &PositiveMatrix,
) -> Result<f64> {
    Ok(generalized_bures_sq(p, q, r)?.sqrt())
}

/// `‖U_P* P^{1/2} - U_Q* Q^{1/2}‖_F²`.
pub fn generalized_bures_sq_frobenius(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    r: &PositiveMatrix,
) -> Result<f64> {
    let f = polar_factors(p, q, r)?;
    let a = f.u_p.as_matrix().adjoint() * p.sqrt().as_matrix();
    let b = f.u_q.as_matrix().adjoint() * q.sqrt().as_matrix();
    Ok(frobenius(&(a - b)).powi(2))
}

/// The two summands `F_{P^x}(P,Q)` and `F_{Q^x}(P,Q)` of the polar fidelity.
pub fn polar_fidelity_parts(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    x: f64,
) -> Result<(Complex64, Complex64)> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "polar parameter must be finite, got {x}"
        )));
    }
    check_dims(p.dim(), q.dim())?;
    let fp = fidelity_at(p, q, &p.pow(x)?)?;
    let fq = fidelity_at(p, q, &q.pow(x)?)?;
    Ok((fp, fq))
}

/// x-polar fidelity `(F_{P^x}(P,Q) + F_{Q^x}(P,Q)) / 2`; `x = 1, 0, -1` give
/// Uhlmann, Holevo and Matsumoto.
pub fn polar_fidelity(p: &PositiveMatrix, q: &PositiveMatrix, x: f64) -> Result<f64> {
    let (a, b) = polar_fidelity_parts(p, q, x)?;
    Ok((a.re + b.re) / 2.0)
}

/// `Tr[P^{1/2} U_x Q^{1/2}]` with `U_x = Pol(P^{x/2} Q^{1/2})`.
pub fn polar_closed_form(p: &PositiveMatrix, q: &PositiveMatrix, x: f64) -> Result<Complex64> {
    check_dims(p.dim(), q.dim())?;
    let u = polar_factor(&(p.pow(x / 2.0)?.as_matrix() * q.sqrt().as_matrix()))?;
    Ok(trace(
        &(p.sqrt().as_matrix() * u.as_matrix() * q.sqrt().as_matrix()),
    ))
}

/// Finite set of bases with probability weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseEnsemble {
    bases: Vec<PositiveMatrix>,
    weights: Vec<f64>,
}

pub(crate) fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidArgument("weights must be non-empty".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "weights must be nonnegative, got {w}"
        )));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::InvalidArgument(format!(
            "weights must sum to 1, sum is {sum}"
        )));
    }
    Ok(())
}

impl BaseEnsemble {
    pub fn new(bases: Vec<PositiveMatrix>, weights: Vec<f64>) -> Result<Self> {
        check_dims(bases.len(), weights.len())?;
        check_weights(&weights)?;
        let d = bases[0].dim();
        for b in &bases {
            check_dims(d, b.dim())?;
        }
        Ok(Self { bases, weights })
    }

    pub fn single(base: PositiveMatrix) -> Self {
        Self {
            bases: vec![base],
            weights: vec![1.0],
        }
    }

    pub fn bases(&self) -> &[PositiveMatrix] {
        &self.bases
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }
}

/// Mean unitary factor `V̄ = Σ μ_i U_Q^{(i)} U_P^{(i)*}`.
pub fn mean_unitary_factor(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    ensemble: &BaseEnsemble,
) -> Result<CMatrix> {
    check_dims(ensemble.dim(), p.dim())?;
    let d = p.dim();
    let mut acc = CMatrix::zeros(d, d);
    for (r, w) in ensemble.bases.iter().zip(&ensemble.weights) {
        acc += unitary_factor(p, q, r)?.as_matrix() * c(*w);
    }
    Ok(acc)
}

/// Interior fidelity `Σ μ_i F_{R_i}(P,Q)`.
pub fn interior_fidelity(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    ensemble: &BaseEnsemble,
) -> Result<ComplexScalar> {
    check_dims(ensemble.dim(), p.dim())?;
    check_dims(p.dim(), q.dim())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (r, w) in ensemble.bases.iter().zip(&ensemble.weights) {
        acc += fidelity_at(p, q, r)? * w;
    }
    Ok(acc.into())
}

#[cfg(test)]
mod tests;
