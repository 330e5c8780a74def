//! Dense complex Hermitian linear algebra.
//!
//! Everything downstream works with three validated newtypes over
//! `DMatrix<Complex64>`:
//!
//! * [`HermitianMatrix`]: square, `A = A*` (exactly, after construction).
//! * [`PositiveMatrix`]: a Hermitian matrix with strictly positive spectrum. The
//!   spectral decomposition computed during validation is kept, so square roots,
//!   inverses and powers do not re-diagonalize.
//! * [`UnitaryMatrix`]: `U*U = I` within `1e-10 d`.
//!
//! Matrix functions are evaluated through the spectral calculus
//! `f(A) = V diag(f(λ)) V*` on top of the Jacobi solver in `eigen`.

mod eigen;
pub mod json;
pub mod random;

use std::ops::Deref;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};

pub use eigen::ROTATIONS_PER_DIM_SQ;
pub use json::{parse_hermitian, parse_matrix, parse_positive, to_json, MatrixJson};
pub use random::{
    random_density, random_hermitian, random_invertible, random_positive, random_pure_state,
    random_unitary, TrialRng,
};

/// Dense complex matrix used for every intermediate product.
pub type CMatrix = DMatrix<Complex64>;

/// Absolute tolerance on `|a_ij - conj(a_ji)|` accepted by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Default relative positivity floor: `λ_min` must exceed `1e-12 λ_max`.
pub const DEFAULT_POSITIVITY_FLOOR: f64 = 1e-12;
/// Per-dimension tolerance for [`UnitaryMatrix::new`].
pub const UNITARY_TOL: f64 = 1e-10;

/// A complex scalar with finite components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexScalar {
    pub re: f64,
    pub im: f64,
}

impl ComplexScalar {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<Complex64> for ComplexScalar {
    fn from(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }
}

impl From<ComplexScalar> for Complex64 {
    fn from(z: ComplexScalar) -> Self {
        Complex64::new(z.re, z.im)
    }
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Trace of a square complex matrix.
pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Frobenius norm.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `||a - b||_F / max(||b||_F, tiny)`.
pub fn relative_frobenius(a: &CMatrix, b: &CMatrix) -> f64 {
    frobenius(&(a - b)) / frobenius(b).max(f64::MIN_POSITIVE)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Block-diagonal direct sum `a ⊕ b`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = CMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

/// Determinant via LU factorization.
pub fn determinant(m: &CMatrix) -> Complex64 {
    m.clone().lu().determinant()
}

fn require_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(Error::InvalidArgument(
            "matrix dimension must be at least 1".into(),
        ));
    }
    Ok(m.nrows())
}

/// Square matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates symmetry to [`HERMITIAN_TOL`] and then stores the exact Hermitian part.
    pub fn new(m: CMatrix) -> Result<Self> {
        require_square(&m)?;
        let mut deviation = 0.0f64;
        for i in 0..m.nrows() {
            for j in i..m.ncols() {
                deviation = deviation.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if deviation > HERMITIAN_TOL || !deviation.is_finite() {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::from_hermitian_part(&m))
    }

    /// `(m + m*) / 2` without validation; used for products that are Hermitian in
    /// exact arithmetic.
    pub fn from_hermitian_part(m: &CMatrix) -> Self {
        Self((m + m.adjoint()) * c(0.5))
    }

    pub fn from_real(d: usize, entries: &[f64]) -> Result<Self> {
        check_dims(d * d, entries.len())?;
        Self::new(CMatrix::from_fn(d, d, |i, j| c(entries[i * d + j])))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        Self(CMatrix::from_fn(d, d, |i, j| {
            if i == j {
                c(diag[i])
            } else {
                c(0.0)
            }
        }))
    }

    pub fn identity(d: usize) -> Self {
        Self(CMatrix::identity(d, d))
    }

    pub fn zeros(d: usize) -> Self {
        Self(CMatrix::zeros(d, d))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        trace(&self.0).re
    }

    pub fn frobenius(&self) -> f64 {
        frobenius(&self.0)
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self(&self.0 - &other.0))
    }

    pub fn scale(&self, s: f64) -> HermitianMatrix {
        Self(&self.0 * c(s))
    }

    /// `X A X*` for any square `X`.
    pub fn congruence(&self, x: &CMatrix) -> Result<HermitianMatrix> {
        check_dims(self.dim(), x.ncols())?;
        Ok(Self::from_hermitian_part(&(x * &self.0 * x.adjoint())))
    }

    /// Tr[A B], real for Hermitian A, B.
    pub fn trace_product(&self, other: &HermitianMatrix) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .0
            .iter()
            .zip(other.0.transpose().iter())
            .map(|(a, b)| (a * b).re)
            .sum())
    }

    pub fn eigh(&self) -> Result<SpectralDecomposition> {
        spectral_decompose(self)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigh()?.eigenvalues)
    }

    /// `f(A)` for a real function defined on the whole spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
        Ok(self.eigh()?.reconstruct_with(f))
    }

    /// Principal square root of a positive semidefinite matrix; eigenvalues are
    /// clipped at zero.
    pub fn psd_sqrt(&self) -> Result<HermitianMatrix> {
        self.psd_map(f64::sqrt)
    }

    /// `f(A)` on the positive part of the spectrum, with eigenvalues at rounding
    /// level (below `d ε λ_max`) treated as exact zeros and sent to `0`.
    pub fn psd_map(&self, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
        let eig = self.eigh()?;
        let cut = psd_noise_floor(&eig.eigenvalues);
        Ok(eig.reconstruct_with(|l| if l > cut { f(l) } else { 0.0 }))
    }

    /// `A^s` of a positive semidefinite matrix with eigenvalues clipped at zero.
    /// Requires `s > 0`.
    pub fn psd_pow(&self, s: f64) -> Result<HermitianMatrix> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "PSD power needs a positive finite exponent, got {s}"
            )));
        }
        self.psd_map(|l| l.powf(s))
    }

    /// Checks positive semidefiniteness down to `-tol * max(1, λ_max)`.
    pub fn require_psd(&self, tol: f64) -> Result<()> {
        let eig = self.eigenvalues()?;
        let lmin = eig[0];
        let lmax = eig[eig.len() - 1].abs();
        let floor = -tol * lmax.max(1.0);
        if lmin < floor {
            return Err(Error::NotPositive {
                min_eigenvalue: lmin,
                floor,
            });
        }
        Ok(())
    }
}

/// Eigenvalues of a positive semidefinite matrix at or below this level are
/// indistinguishable from zero in double precision.
pub fn psd_noise_floor(eigenvalues: &[f64]) -> f64 {
    let lmax = eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    eigenvalues.len() as f64 * f64::EPSILON * lmax
}

/// Eigenvalues in ascending order with the unitary matrix of column eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: UnitaryMatrix,
}

impl SpectralDecomposition {
    /// `V diag(f(λ)) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let v = self.eigenvectors.as_matrix();
        let mut scaled = v.clone();
        for (j, &l) in self.eigenvalues.iter().enumerate() {
            let fl = c(f(l));
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fl);
        }
        HermitianMatrix::from_hermitian_part(&(scaled * v.adjoint()))
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.reconstruct_with(|l| l)
    }
}

/// Diagonalizes a Hermitian matrix with the cyclic Jacobi method.
///
/// Fails with [`Error::NonConvergence`] once `30 d^2` rotations have been spent.
pub fn spectral_decompose(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let (eigenvalues, vectors) = eigen::jacobi_eigh(h.as_matrix())?;
    if eigenvalues.iter().any(|l| !l.is_finite()) {
        return Err(Error::InvalidArgument(
            "matrix has non-finite entries".into(),
        ));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: UnitaryMatrix(vectors),
    })
}

/// Scalar function tags accepted by [`apply_spectral_fn`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralFn {
    Sqrt,
    InvSqrt,
    Log,
    Exp,
    Pow(f64),
    Inv,
}

impl SpectralFn {
    fn eval(self, l: f64) -> f64 {
        match self {
            SpectralFn::Sqrt => l.sqrt(),
            SpectralFn::InvSqrt => 1.0 / l.sqrt(),
            SpectralFn::Log => l.ln(),
            SpectralFn::Exp => l.exp(),
            SpectralFn::Pow(s) => l.powf(s),
            SpectralFn::Inv => 1.0 / l,
        }
    }
}

/// `V diag(f(λ)) V*` for a positive definite `P`.
pub fn apply_spectral_fn(p: &PositiveMatrix, f: SpectralFn) -> Result<HermitianMatrix> {
    if let SpectralFn::Pow(s) = f {
        if !s.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite exponent {s}")));
        }
    }
    Ok(p.spectrum.reconstruct_with(|l| f.eval(l)))
}

/// Hermitian matrix with strictly positive spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveMatrix {
    matrix: HermitianMatrix,
    spectrum: SpectralDecomposition,
    min_eig_floor: f64,
}

impl PositiveMatrix {
    /// Accepts `h` when `λ_min > 1e-12 λ_max`.
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let spectrum = h.eigh()?;
        let lmax = *spectrum.eigenvalues.last().expect("non-empty spectrum");
        let floor = DEFAULT_POSITIVITY_FLOOR * lmax.max(0.0);
        Self::validated(h, spectrum, floor)
    }

    /// Accepts `h` when `λ_min > floor` (an absolute bound).
    pub fn with_floor(h: HermitianMatrix, floor: f64) -> Result<Self> {
        let spectrum = h.eigh()?;
        Self::validated(h, spectrum, floor.max(0.0))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    pub fn from_real(d: usize, entries: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real(d, entries)?)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diagonal(diag))
    }

    pub fn identity(d: usize) -> Self {
        let spectrum = SpectralDecomposition {
            eigenvalues: vec![1.0; d],
            eigenvectors: UnitaryMatrix(CMatrix::identity(d, d)),
        };
        Self {
            matrix: HermitianMatrix::identity(d),
            spectrum,
            min_eig_floor: 0.0,
        }
    }

    fn validated(
        matrix: HermitianMatrix,
        spectrum: SpectralDecomposition,
        floor: f64,
    ) -> Result<Self> {
        let lmin = spectrum.eigenvalues[0];
        if !(lmin > floor) {
            return Err(Error::NotPositive {
                min_eigenvalue: lmin,
                floor,
            });
        }
        Ok(Self {
            matrix,
            spectrum,
            min_eig_floor: floor,
        })
    }

    /// Builds `V diag(f(λ)) V*` as a positive matrix directly; `f` must map the
    /// spectrum to positive finite values.
    fn spectral_image(&self, f: impl Fn(f64) -> f64) -> Result<PositiveMatrix> {
        let mut pairs: Vec<(f64, usize)> = self
            .spectrum
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &l)| (f(l), i))
            .collect();
        if let Some(&(bad, _)) = pairs.iter().find(|(l, _)| !(*l > 0.0 && l.is_finite())) {
            return Err(Error::NotPositive {
                min_eigenvalue: bad,
                floor: 0.0,
            });
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let v = self.spectrum.eigenvectors.as_matrix();
        let d = self.dim();
        let vectors = CMatrix::from_fn(d, d, |r, col| v[(r, pairs[col].1)]);
        let spectrum = SpectralDecomposition {
            eigenvalues: pairs.iter().map(|p| p.0).collect(),
            eigenvectors: UnitaryMatrix(vectors),
        };
        Ok(PositiveMatrix {
            matrix: spectrum.reconstruct(),
            spectrum,
            min_eig_floor: 0.0,
        })
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn min_eig_floor(&self) -> f64 {
        self.min_eig_floor
    }

    pub fn condition_number(&self) -> f64 {
        let e = &self.spectrum.eigenvalues;
        e[e.len() - 1] / e[0]
    }

    pub fn sqrt(&self) -> PositiveMatrix {
        self.spectral_image(f64::sqrt)
            .expect("sqrt of a positive spectrum")
    }

    pub fn inv_sqrt(&self) -> PositiveMatrix {
        self.spectral_image(|l| 1.0 / l.sqrt())
            .expect("inverse sqrt of a positive spectrum")
    }

    pub fn inverse(&self) -> PositiveMatrix {
        self.spectral_image(|l| 1.0 / l)
            .expect("inverse of a positive spectrum")
    }

    pub fn pow(&self, s: f64) -> Result<PositiveMatrix> {
        if !s.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite exponent {s}")));
        }
        self.spectral_image(|l| l.powf(s))
    }

    pub fn log(&self) -> HermitianMatrix {
        self.spectrum.reconstruct_with(f64::ln)
    }

    pub fn scale(&self, s: f64) -> Result<PositiveMatrix> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive, got {s}"
            )));
        }
        self.spectral_image(|l| l * s)
    }

    /// `X P X*` for an invertible `X`.
    pub fn congruence(&self, x: &CMatrix) -> Result<PositiveMatrix> {
        PositiveMatrix::new(self.matrix.congruence(x)?)
    }

    /// `Λ^s V* H V Λ^s` in the eigenbasis `V` of `self`: unitarily similar to
    /// `self^s H self^s`, with the scaling applied entrywise so that graded
    /// spectra keep their small eigenvalues to relative accuracy.
    pub fn graded_congruence(&self, h: &HermitianMatrix, s: f64) -> Result<HermitianMatrix> {
        check_dims(self.dim(), h.dim())?;
        let v = self.spectrum.eigenvectors.as_matrix();
        let scale: Vec<f64> = self.spectrum.eigenvalues.iter().map(|l| l.powf(s)).collect();
        let mut m = v.adjoint() * h.as_matrix() * v;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                m[(i, j)] *= c(scale[i] * scale[j]);
            }
        }
        Ok(HermitianMatrix::from_hermitian_part(&m))
    }

    /// Rescales to unit trace.
    pub fn normalized(&self) -> PositiveMatrix {
        let t = self.trace();
        self.scale(1.0 / t).expect("positive trace")
    }
}

impl Deref for PositiveMatrix {
    type Target = HermitianMatrix;

    fn deref(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

impl AsRef<HermitianMatrix> for PositiveMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

impl From<PositiveMatrix> for HermitianMatrix {
    fn from(p: PositiveMatrix) -> Self {
        p.matrix
    }
}

/// Square matrix with `U*U = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let d = require_square(&m)?;
        let deviation = frobenius(&(m.adjoint() * &m - CMatrix::identity(d, d)));
        if deviation > UNITARY_TOL * d as f64 || !deviation.is_finite() {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self(m))
    }

    pub fn identity(d: usize) -> Self {
        Self(CMatrix::identity(d, d))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        Self(self.0.adjoint())
    }

    pub fn mul(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self(&self.0 * &other.0))
    }

    pub fn determinant(&self) -> Complex64 {
        determinant(&self.0)
    }
}

/// Iteration cap for the Newton polar iteration.
const POLAR_MAX_ITER: usize = 100;

/// Unitary polar factor `Pol(A) = A (A*A)^{-1/2}` of an invertible square matrix.
///
/// Computed with the scaled Newton iteration `X <- (ζX + X^{-*}/ζ)/2`, which
/// avoids squaring the condition number of `A`. Rank deficiency is detected up
/// front from the spectrum of `A*A`.
pub fn polar_factor(a: &CMatrix) -> Result<UnitaryMatrix> {
    let d = require_square(a)?;
    let gram = HermitianMatrix::from_hermitian_part(&(a.adjoint() * a));
    let eig = gram.eigenvalues()?;
    let smax = eig[d - 1].max(0.0).sqrt();
    let smin = eig[0].max(0.0).sqrt();
    if !(smin > 1e-14 * smax) || smax == 0.0 {
        return Err(Error::Singular {
            min_singular_value: smin,
        });
    }

    let mut x = a.clone();
    let mut residual = f64::INFINITY;
    for iter in 0..POLAR_MAX_ITER {
        let inv = x.clone().try_inverse().ok_or(Error::Singular {
            min_singular_value: smin,
        })?;
        let inv_adj = inv.adjoint();
        // Frobenius-norm scaling speeds up the early iterations.
        let zeta = if iter < 10 {
            (frobenius(&inv) / frobenius(&x)).sqrt()
        } else {
            1.0
        };
        let next = (&x * c(zeta) + inv_adj * c(1.0 / zeta)) * c(0.5);
        residual = frobenius(&(&next - &x)) / frobenius(&next);
        x = next;
        if residual <= 1e-15 * (d as f64).sqrt() {
            break;
        }
        if iter == POLAR_MAX_ITER - 1 && residual > 1e-12 {
            return Err(Error::NonConvergence {
                what: "polar iteration",
                iterations: POLAR_MAX_ITER,
                residual,
            });
        }
    }
    let _ = residual;
    // One Newton-Schulz step to clean the last ulps of unitarity.
    let xtx = x.adjoint() * &x;
    let polished = &x * (CMatrix::identity(d, d) * c(3.0) - xtx) * c(0.5);
    UnitaryMatrix::new(polished)
}

/// Matrix geometric mean `A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}`.
pub fn geometric_mean(a: &PositiveMatrix, b: &PositiveMatrix) -> Result<PositiveMatrix> {
    weighted_geometric_mean(a, b, 0.5)
}

/// Weighted geometric mean `A #_α B = A^{1/2} (A^{-1/2} B A^{-1/2})^α A^{1/2}`.
pub fn weighted_geometric_mean(
    a: &PositiveMatrix,
    b: &PositiveMatrix,
    alpha: f64,
) -> Result<PositiveMatrix> {
    check_dims(a.dim(), b.dim())?;
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite weight {alpha}")));
    }
    let inner = symmetrized_division(b, a)?;
    let powered = inner.map_spectrum(|l| l.max(0.0).powf(alpha))?;
    let root = a.sqrt();
    PositiveMatrix::with_floor(powered.congruence(root.as_matrix())?, 0.0)
}

/// Symmetrized division `B^{-1/2} A B^{-1/2}`.
pub fn symmetrized_division(a: &HermitianMatrix, b: &PositiveMatrix) -> Result<HermitianMatrix> {
    check_dims(b.dim(), a.dim())?;
    a.congruence(b.inv_sqrt().as_matrix())
}

/// Solves `Y P + P Y = X` in the eigenbasis of `P`: `Ỹ_ij = X̃_ij / (λ_i + λ_j)`.
pub fn lyapunov_solve(p: &PositiveMatrix, x: &HermitianMatrix) -> Result<HermitianMatrix> {
    check_dims(p.dim(), x.dim())?;
    let v = p.spectrum.eigenvectors.as_matrix();
    let lam = &p.spectrum.eigenvalues;
    let mut xt = v.adjoint() * x.as_matrix() * v;
    for i in 0..xt.nrows() {
        for j in 0..xt.ncols() {
            xt[(i, j)] /= lam[i] + lam[j];
        }
    }
    Ok(HermitianMatrix::from_hermitian_part(
        &(v * xt * v.adjoint()),
    ))
}

/// Euclidean mixture `Σ w_i P_i` of positive matrices.
pub fn convex_combination(weights: &[f64], mats: &[PositiveMatrix]) -> Result<PositiveMatrix> {
    check_dims(weights.len(), mats.len())?;
    let d = mats
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?
        .dim();
    let mut acc = CMatrix::zeros(d, d);
    for (w, m) in weights.iter().zip(mats) {
        check_dims(d, m.dim())?;
        acc += m.as_matrix() * c(*w);
    }
    PositiveMatrix::new(HermitianMatrix::from_hermitian_part(&acc))
}

#[cfg(test)]
mod tests;
