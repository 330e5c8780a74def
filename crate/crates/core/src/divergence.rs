//! Rényi-type divergences, reported in bits unless converted with [`LogBase`].
//!
//! | name | trace quantity `Q_α(P‖Q)` |
//! |---|---|
//! | Petz | `Tr[P^α Q^{1-α}]` |
//! | sandwich | `Tr[(Q^{(1-α)/2α} P Q^{(1-α)/2α})^α]` |
//! | reverse sandwich | `Tr[(P^{α/2(1-α)} Q P^{α/2(1-α)})^{1-α}]` |
//! | geometric | `Tr[Q #_α P]` |
//! | α-z | `Tr[(P^{α/2z} Q^{(1-α)/z} P^{α/2z})^z]` |
//!
//! and `D_α = log₂ Q_α / (α - 1)`. The base-dependent trace functional
//!
//! ```text
//! F_R^α(P,Q) = Tr[(R^{1/2} P R^{1/2})^α R⁻¹ (R^{1/2} Q R^{1/2})^{1-α}]
//! ```
//!
//! reproduces the first four at `R = I`, `Q^{(1-α)/α}`, `P^{α/(1-α)}` and `Q⁻¹`.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::linalg::{symmetrized_division, ComplexScalar, PositiveMatrix};

/// Output unit of a divergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

impl LogBase {
    /// Converts a value in bits to this unit.
    pub fn from_bits(self, bits: f64) -> f64 {
        match self {
            LogBase::Bits => bits,
            LogBase::Nats => bits * LN_2,
        }
    }
}

/// Order `α` and optional `z` of a divergence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceOrder {
    pub alpha: f64,
    pub z: Option<f64>,
}

impl DivergenceOrder {
    pub fn new(alpha: f64, z: Option<f64>) -> Result<Self> {
        check_alpha(alpha)?;
        if let Some(z) = z {
            check_z(z)?;
        }
        Ok(Self { alpha, z })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return Err(Error::InvalidArgument(format!(
            "order must lie in (0, 1) or (1, inf), got {alpha}"
        )));
    }
    Ok(())
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidArgument(format!("z must be positive and finite, got {z}")));
    }
    Ok(())
}

fn from_quantity(q: f64, alpha: f64, operation: &'static str) -> Result<f64> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain {
            operation,
            reason: format!("trace quantity {q} is not positive"),
        });
    }
    Ok(q.log2() / (alpha - 1.0))
}

/// Classical Rényi divergence in bits; `+∞` when `α > 1` and `p` is not
/// supported inside `q`.
pub fn classical_renyi(p: &[f64], q: &[f64], alpha: f64) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    check_alpha(alpha)?;
    for v in [p, q] {
        if let Some(x) = v.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
            return Err(Error::InvalidArgument(format!("probabilities must be nonnegative, got {x}")));
        }
        let s: f64 = v.iter().sum();
        if (s - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("probabilities must sum to 1, sum is {s}")));
        }
    }
    let mut acc = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            if alpha > 1.0 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        acc += a.powf(alpha) * b.powf(1.0 - alpha);
    }
    from_quantity(acc, alpha, "classical Renyi divergence")
}

fn pair(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<()> {
    check_dims(p.dim(), q.dim())
}

fn psd_trace_pow(m: &crate::linalg::HermitianMatrix, s: f64) -> Result<f64> {
    Ok(m.eigenvalues()?.iter().map(|l| l.max(0.0).powf(s)).sum())
}

/// `Tr[(P^{α/2z} Q^{(1-α)/z} P^{α/2z})^z]`.
pub fn alpha_z_quantity(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64, z: f64) -> Result<f64> {
    pair(p, q)?;
    check_alpha(alpha)?;
    check_z(z)?;
    let inner = q.pow((1.0 - alpha) / z)?;
    psd_trace_pow(&p.graded_congruence(inner.hermitian(), alpha / (2.0 * z))?, z)
}

/// α-z Rényi divergence.
pub fn alpha_z_divergence(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64, z: f64) -> Result<f64> {
    from_quantity(alpha_z_quantity(p, q, alpha, z)?, alpha, "alpha-z Renyi divergence")
}

pub fn petz_quantity(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    pair(p, q)?;
    check_alpha(alpha)?;
    p.pow(alpha)?.trace_product(q.pow(1.0 - alpha)?.hermitian())
}

/// Petz-Rényi divergence.
pub fn petz(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    from_quantity(petz_quantity(p, q, alpha)?, alpha, "Petz-Renyi divergence")
}

pub fn sandwich_quantity(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    pair(p, q)?;
    check_alpha(alpha)?;
    psd_trace_pow(&q.graded_congruence(p.hermitian(), (1.0 - alpha) / (2.0 * alpha))?, alpha)
}

/// Sandwiched Rényi divergence.
pub fn sandwich(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    from_quantity(sandwich_quantity(p, q, alpha)?, alpha, "sandwiched Renyi divergence")
}

/// `Tr[(P^{α/2(1-α)} Q P^{α/2(1-α)})^{1-α}]`; both exponents are negative for `α > 1`.
pub fn reverse_sandwich_quantity(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    pair(p, q)?;
    check_alpha(alpha)?;
    let inner = p.graded_congruence(q.hermitian(), alpha / (2.0 * (1.0 - alpha)))?;
    Ok(inner.eigenvalues()?.iter().map(|l| l.powf(1.0 - alpha)).sum())
}

/// Reverse sandwiched Rényi divergence.
pub fn reverse_sandwich(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    from_quantity(
        reverse_sandwich_quantity(p, q, alpha)?,
        alpha,
        "reverse sandwiched Renyi divergence",
    )
}

pub fn geometric_quantity(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    pair(p, q)?;
    check_alpha(alpha)?;
    let inner = q.graded_congruence(p.hermitian(), -0.5)?.map_spectrum(|l| l.max(0.0).powf(alpha))?;
    Ok(q.eigenvalues()
        .iter()
        .enumerate()
        .map(|(i, l)| l * inner.as_matrix()[(i, i)].re)
        .sum())
}

/// Geometric Rényi divergence `log₂ Tr[Q #_α P] / (α - 1)`.
pub fn geometric_renyi(p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
    from_quantity(geometric_quantity(p, q, alpha)?, alpha, "geometric Renyi divergence")
}

/// Umegaki relative entropy `Tr[P(log P - log Q)]`.
pub fn umegaki(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
    pair(p, q)?;
    Ok(p.trace_product(&p.log().sub(&q.log())?)? / LN_2)
}

/// Belavkin-Staszewski relative entropy `Tr[P log(P^{1/2} Q⁻¹ P^{1/2})]`.
pub fn belavkin_staszewski(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
    pair(p, q)?;
    let inner = q.inverse().hermitian().congruence(p.sqrt().as_matrix())?;
    Ok(p.trace_product(&inner.map_spectrum(f64::ln)?)? / LN_2)
}

/// Max-relative entropy `log₂ λ_max(Q^{-1/2} P Q^{-1/2})`.
pub fn max_relative(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<f64> {
    pair(p, q)?;
    let eig = symmetrized_division(p, q)?.eigenvalues()?;
    Ok(eig[eig.len() - 1].log2())
}

/// `Tr[(R^{1/2} P R^{1/2})^α R⁻¹ (R^{1/2} Q R^{1/2})^{1-α}]`.
pub fn generalized_trace_functional(
    p: &PositiveMatrix,
    q: &PositiveMatrix,
    r: &PositiveMatrix,
    alpha: f64,
) -> Result<ComplexScalar> {
    pair(p, q)?;
    check_dims(r.dim(), p.dim())?;
    check_alpha(alpha)?;
    let a = PositiveMatrix::with_floor(r.graded_congruence(p.hermitian(), 0.5)?, 0.0)?.pow(alpha)?;
    let b = PositiveMatrix::with_floor(r.graded_congruence(q.hermitian(), 0.5)?, 0.0)?.pow(1.0 - alpha)?;
    let (a, b) = (a.as_matrix(), b.as_matrix());
    let mut v = Complex64::new(0.0, 0.0);
    for (j, &l) in r.eigenvalues().iter().enumerate() {
        v += (a.column(j).transpose() * b.row(j).transpose())[(0, 0)] / l;
    }
    Ok(v.into())
}

/// `log₂ Re F_R^α(P,Q) / (α - 1)`; a nonpositive real part is a domain error.
pub fn generalized_renyi(p: &PositiveMatrix, q: &PositiveMatrix, r: &PositiveMatrix, alpha: f64) -> Result<f64> {
    let f = generalized_trace_functional(p, q, r, alpha)?;
    from_quantity(f.re, alpha, "base-dependent Renyi divergence")
}

/// The four named divergences recovered by the base-dependent trace functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RenyiKind {
    Petz,
    Sandwich,
    ReverseSandwich,
    Geometric,
}

impl RenyiKind {
    pub const ALL: [RenyiKind; 4] = [
        RenyiKind::Petz,
        RenyiKind::Sandwich,
        RenyiKind::ReverseSandwich,
        RenyiKind::Geometric,
    ];

    /// Base `R` at which `F_R^α` equals this divergence's trace quantity.
    pub fn base(self, p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<PositiveMatrix> {
        check_alpha(alpha)?;
        match self {
            RenyiKind::Petz => Ok(PositiveMatrix::identity(p.dim())),
            RenyiKind::Sandwich => q.pow((1.0 - alpha) / alpha),
            RenyiKind::ReverseSandwich => p.pow(alpha / (1.0 - alpha)),
            RenyiKind::Geometric => Ok(q.inverse()),
        }
    }

    pub fn quantity(self, p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
        match self {
            RenyiKind::Petz => petz_quantity(p, q, alpha),
            RenyiKind::Sandwich => sandwich_quantity(p, q, alpha),
            RenyiKind::ReverseSandwich => reverse_sandwich_quantity(p, q, alpha),
            RenyiKind::Geometric => geometric_quantity(p, q, alpha),
        }
    }

    pub fn divergence(self, p: &PositiveMatrix, q: &PositiveMatrix, alpha: f64) -> Result<f64> {
        match self {
            RenyiKind::Petz => petz(p, q, alpha),
            RenyiKind::Sandwich => sandwich(p, q, alpha),
            RenyiKind::ReverseSandwich => reverse_sandwich(p, q, alpha),
            RenyiKind::Geometric => geometric_renyi(p, q, alpha),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RenyiKind::Petz => "petz",
            RenyiKind::Sandwich => "sandwich",
            RenyiKind::ReverseSandwich => "reverse-sandwich",
            RenyiKind::Geometric => "geometric",
        }
    }
}

impl fmt::Display for RenyiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RenyiKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "petz" => Ok(RenyiKind::Petz),
            "sandwich" | "sandwiched" => Ok(RenyiKind::Sandwich),
            "reverse-sandwich" | "reverse" => Ok(RenyiKind::ReverseSandwich),
            "geometric" => Ok(RenyiKind::Geometric),
            other => Err(Error::InvalidArgument(format!("unknown divergence {other:?}"))),
        }
    }
}
