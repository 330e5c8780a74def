//! Bures-Wasserstein barycenters and multivariate fidelities.
//!
//! The weighted barycenter of `ρ_1 … ρ_n` is the unique positive solution of
//! `σ = Σ μ_i √(σ^{1/2} ρ_i σ^{1/2})`. It is computed by Picard iteration from
//! the mixture `Σ μ_i ρ_i`. With uniform weights and trace normalization the
//! fixed point maximizes the total fidelity `f(σ) = Σ_i F^U(ρ_i, σ)` over
//! density matrices and satisfies `f(σ)² = Σ_{i,j} F_σ(ρ_i, ρ_j)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::fidelity::{check_weights, fidelity_at, uhlmann};
use crate::linalg::json::MatrixJson;
use crate::linalg::{c, frobenius, CMatrix, ComplexScalar, HermitianMatrix, PositiveMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// States with probability weights.
#[derive(Debug, Clone, PartialEq)]
pub struct StateEnsemble {
    states: Vec<PositiveMatrix>,
    weights: Vec<f64>,
}

impl StateEnsemble {
    pub fn new(states: Vec<PositiveMatrix>, weights: Vec<f64>) -> Result<Self> {
        check_dims(states.len(), weights.len())?;
        check_weights(&weights)?;
        let d = states[0].dim();
        for s in &states {
            check_dims(d, s.dim())?;
        }
        Ok(Self { states, weights })
    }

    pub fn uniform(states: Vec<PositiveMatrix>) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::InvalidArgument("ensemble must contain at least one state".into()));
        }
        Self::new(states, vec![1.0 / n as f64; n])
    }

    pub fn states(&self) -> &[PositiveMatrix] {
        &self.states
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }
}

/// On-disk ensemble: `{"weights": [...], "states": [<matrix>, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleJson {
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    pub states: Vec<MatrixJson>,
}

impl EnsembleJson {
    /// Builds the ensemble; missing weights mean uniform weights.
    pub fn to_ensemble(&self) -> Result<StateEnsemble> {
        let states = self
            .states
            .iter()
            .map(|m| PositiveMatrix::from_matrix(m.to_matrix()?))
            .collect::<Result<Vec<_>>>()?;
        match &self.weights {
            Some(w) => StateEnsemble::new(states, w.clone()),
            None => StateEnsemble::uniform(states),
        }
    }
}

pub fn parse_ensemble(text: &str) -> Result<StateEnsemble> {
    let raw: EnsembleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_ensemble()
}

/// Normalization applied after each fixed-point step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Weighted barycenter `σ = Σ μ_i √(σ^{1/2} ρ_i σ^{1/2})`.
    Weighted,
    /// Uniform weights, rescaled to unit trace after every step: the maximizer
    /// of the total fidelity over density matrices.
    FidelityMaximizer,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarycenterOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub normalization: Normalization,
}

impl Default for BarycenterOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            normalization: Normalization::Weighted,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarycenterResult {
    pub sigma: PositiveMatrix,
    pub iterations: usize,
    /// Relative Frobenius change of the last step.
    pub residual: f64,
    /// `Σ_i F^U(ρ_i, σ)`.
    pub total_fidelity: f64,
}

/// `Σ_i F^U(ρ_i, σ)`, unweighted.
pub fn total_fidelity(sigma: &PositiveMatrix, ensemble: &StateEnsemble) -> Result<f64> {
    check_dims(ensemble.dim(), sigma.dim())?;
    ensemble.states.iter().map(|rho| uhlmann(rho, sigma)).sum()
}

fn fixed_point_map(sigma: &PositiveMatrix, states: &[PositiveMatrix], weights: &[f64]) -> Result<CMatrix> {
    let root = sigma.sqrt();
    let terms = states
        .par_iter()
        .map(|rho| rho.congruence(root.as_matrix()).map(|m| m.sqrt()))
        .collect::<Result<Vec<_>>>()?;
    let d = sigma.dim();
    let mut acc = CMatrix::zeros(d, d);
    for (t, w) in terms.iter().zip(weights) {
        acc += t.as_matrix() * c(*w);
    }
    Ok(acc)
}

/// Weighted Bures-Wasserstein barycenter with default options.
pub fn bw_barycenter(ensemble: &StateEnsemble, tol: f64, max_iter: usize) -> Result<BarycenterResult> {
    bw_barycenter_with(
        ensemble,
        BarycenterOptions {
            tol,
            max_iter,
            normalization: Normalization::Weighted,
        },
    )
}

/// Picard iteration for the barycenter fixed point.
///
/// Stops once `‖σ_{k+1} - σ_k‖_F / ‖σ_k‖_F ≤ tol`.
pub fn bw_barycenter_with(ensemble: &StateEnsemble, options: BarycenterOptions) -> Result<BarycenterResult> {
    if !(options.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", options.tol)));
    }
    let n = ensemble.len();
    let uniform = vec![1.0 / n as f64; n];
    let (weights, normalize) = match options.normalization {
        Normalization::Weighted => (ensemble.weights.as_slice(), false),
        Normalization::FidelityMaximizer => (uniform.as_slice(), true),
    };
    let start = CMatrix::zeros(ensemble.dim(), ensemble.dim());
    let start = ensemble
        .states
        .iter()
        .zip(weights)
        .fold(start, |acc, (s, w)| acc + s.as_matrix() * c(*w));
    let mut sigma = PositiveMatrix::with_floor(HermitianMatrix::from_hermitian_part(&start), 0.0)?;
    if normalize {
        sigma = sigma.normalized();
    }

    let mut residual = f64::INFINITY;
    for iter in 1..=options.max_iter {
        let mut next = fixed_point_map(&sigma, &ensemble.states, weights)?;
        if normalize {
            let tr = crate::linalg::trace(&next).re;
            next *= c(1.0 / tr);
        }
        let next = PositiveMatrix::with_floor(HermitianMatrix::from_hermitian_part(&next), 0.0)?;
        residual = frobenius(&(next.as_matrix() - sigma.as_matrix())) / frobenius(sigma.as_matrix());
        sigma = next;
        if residual <= options.tol {
            let total = total_fidelity(&sigma, ensemble)?;
            return Ok(BarycenterResult {
                sigma,
                iterations: iter,
                residual,
                total_fidelity: total,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "barycenter fixed-point iteration",
        iterations: options.max_iter,
        residual,
    })
}

/// `(1/(n(n-1))) Σ_{i≠j} F^U(ρ_i, ρ_j)`.
pub fn multivariate_fidelity(states: &[PositiveMatrix]) -> Result<f64> {
    let n = states.len();
    if n < 2 {
        return Err(Error::InvalidArgument("multivariate fidelity needs at least two states".into()));
    }
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += uhlmann(&states[i], &states[j])?;
            }
        }
    }
    Ok(acc / (n * (n - 1)) as f64)
}

/// `(1/(n(n-1))) Σ_{i≠j} F_σ(ρ_i, ρ_j)`.
pub fn generalized_multivariate_fidelity(states: &[PositiveMatrix], sigma: &PositiveMatrix) -> Result<ComplexScalar> {
    let n = states.len();
    if n < 2 {
        return Err(Error::InvalidArgument("multivariate fidelity needs at least two states".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += fidelity_at(&states[i], &states[j], sigma)?;
            }
        }
    }
    Ok((acc / (n * (n - 1)) as f64).into())
}

/// Outcome of checking `f(σ)² = Σ_{i,j} F_σ(ρ_i, ρ_j)` at the fidelity maximizer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarycenterIdentityReport {
    pub n: usize,
    pub iterations: usize,
    pub total_fidelity: f64,
    pub double_sum: ComplexScalar,
    /// `|f(σ)² - Re Σ| / f(σ)²`
    pub residual: f64,
    /// `|Im Σ| / f(σ)²`
    pub imaginary_residual: f64,
    pub passed: bool,
}

pub fn check_barycenter_identity(states: &[PositiveMatrix], tol: f64) -> Result<BarycenterIdentityReport> {
    let ensemble = StateEnsemble::uniform(states.to_vec())?;
    let result = bw_barycenter_with(
        &ensemble,
        BarycenterOptions {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            normalization: Normalization::FidelityMaximizer,
        },
    )?;
    let f = result.total_fidelity;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in states {
        for b in states {
            sum += fidelity_at(a, b, &result.sigma)?;
        }
    }
    let f2 = f * f;
    let residual = (f2 - sum.re).abs() / f2;
    let imaginary_residual = sum.im.abs() / f2;
    Ok(BarycenterIdentityReport {
        n: states.len(),
        iterations: result.iterations,
        total_fidelity: f,
        double_sum: sum.into(),
        residual,
        imaginary_residual,
        passed: residual <= tol && imaginary_residual <= tol,
    })
}
