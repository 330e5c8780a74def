//! Block-matrix form of `F_R`, purifications and the determinant of the
//! unitary factor.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_dims, Result};
use crate::fidelity::{fidelity_at, generalized_bures_sq, polar_factors, uhlmann, unitary_factor};
use crate::linalg::{c, frobenius, kron, trace, CMatrix, ComplexScalar, HermitianMatrix, PositiveMatrix, UnitaryMatrix};

use super::paths::fidelity_scale;

/// Block matrices of the total-fidelity program for `(P, Q, R)` together with
/// its closed-form optimum `X⋆ = T T*`, `T = [P^{1/2}U_P; Q^{1/2}U_Q; R^{1/2}]`.
///
/// ```text
/// A = ½ [0 0 I; 0 0 I; I I 0]   B = diag(P, Q, R)
/// K = [0 I 0; 0 0 0; 0 0 0]     J = [I -I 0; -I I 0; 0 0 0]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSystem {
    pub d: usize,
    pub a: CMatrix,
    pub b: CMatrix,
    pub k: CMatrix,
    pub j: CMatrix,
    pub x_star: HermitianMatrix,
}

fn blocks(d: usize, entries: &[(usize, usize, &CMatrix)]) -> CMatrix {
    let mut m = CMatrix::zeros(3 * d, 3 * d);
    for (bi, bj, blk) in entries {
        m.view_mut((bi * d, bj * d), (d, d)).copy_from(*blk);
    }
    m
}

/// Keeps the diagonal `d×d` blocks of a `3d×3d` matrix.
pub fn block_diagonal_part(m: &CMatrix, d: usize) -> CMatrix {
    let mut out = CMatrix::zeros(3 * d, 3 * d);
    for b in 0..3 {
        out.view_mut((b * d, b * d), (d, d))
            .copy_from(&m.view((b * d, b * d), (d, d)));
    }
    out
}

pub fn build_block_system(p: &PositiveMatrix, q: &PositiveMatrix, r: &PositiveMatrix) -> Result<BlockSystem> {
    check_dims(p.dim(), q.dim())?;
    check_dims(p.dim(), r.dim())?;
    let d = p.dim();
    let id = CMatrix::identity(d, d);
    let half = &id * c(0.5);
    let f = polar_factors(p, q, r)?;
    let mut t = CMatrix::zeros(3 * d, d);
    t.view_mut((0, 0), (d, d))
        .copy_from(&(p.sqrt().as_matrix() * f.u_p.as_matrix()));
    t.view_mut((d, 0), (d, d))
        .copy_from(&(q.sqrt().as_matrix() * f.u_q.as_matrix()));
    t.view_mut((2 * d, 0), (d, d)).copy_from(r.sqrt().as_matrix());
    let mut x = &t * t.adjoint();
    // Diagonal blocks are set to the constraint values so that Φ(X⋆) = B holds exactly.
    for (b, m) in [p, q, r].into_iter().enumerate() {
        x.view_mut((b * d, b * d), (d, d)).copy_from(m.as_matrix());
    }
    let (pm, qm, rm) = (p.as_matrix(), q.as_matrix(), r.as_matrix());
    let neg = -&id;
    Ok(BlockSystem {
        d,
        a: blocks(d, &[(0, 2, &half), (1, 2, &half), (2, 0, &half), (2, 1, &half)]),
        b: blocks(d, &[(0, 0, pm), (1, 1, qm), (2, 2, rm)]),
        k: blocks(d, &[(0, 1, &id)]),
        j: blocks(d, &[(0, 0, &id), (0, 1, &neg), (1, 0, &neg), (1, 1, &id)]),
        x_star: HermitianMatrix::from_hermitian_part(&x),
    })
}

impl BlockSystem {
    /// `⟨M, X⋆⟩ = Tr[M* X⋆]`.
    pub fn pair(&self, m: &CMatrix) -> Complex64 {
        trace(&(m.adjoint() * self.x_star.as_matrix()))
    }

    /// `‖Φ(X⋆) - B‖_F`.
    pub fn feasibility_residual(&self) -> f64 {
        frobenius(&(block_diagonal_part(self.x_star.as_matrix(), self.d) - &self.b))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.x_star.eigenvalues()?[0])
    }

    /// `⟨A, X⋆⟩`, which equals `F^U(P,R) + F^U(Q,R)` at the optimum.
    pub fn objective(&self) -> f64 {
        self.pair(&self.a).re
    }
}

/// `F_R`, `Re F_R` and `B_R` read off `X⋆`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockExtraction {
    pub fidelity: ComplexScalar,
    pub re_fidelity: f64,
    pub bures_sq: f64,
}

/// `F_R = Tr[K X⋆]`, `Re F_R = ⟨(K+K*)/2, X⋆⟩`, `B_R = ⟨J, X⋆⟩`.
///
/// `⟨K, X⋆⟩ = Tr[K* X⋆]` is the conjugate of `F_R`; the unconjugated trace
/// picks the `(2,1)` block `Q^{1/2} U_Q U_P* P^{1/2}`.
pub fn extract_from_block(system: &BlockSystem) -> BlockExtraction {
    let f = trace(&(&system.k * system.x_star.as_matrix()));
    let sym = (&system.k + system.k.adjoint()) * c(0.5);
    BlockExtraction {
        fidelity: f.into(),
        re_fidelity: system.pair(&sym).re,
        bures_sq: system.pair(&system.j).re,
    }
}

/// Residuals of the block characterization for one triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockCheck {
    pub min_eigenvalue: f64,
    pub feasibility: f64,
    /// `|⟨A,X⋆⟩ - F^U(P,R) - F^U(Q,R)|`, relative.
    pub objective: f64,
    /// `|Tr[K X⋆] - F_R|` and `|⟨(K+K*)/2, X⋆⟩ - Re F_R|`, relative.
    pub fidelity: f64,
    /// `|⟨J,X⋆⟩ - B_R|` relative to `Tr[P + Q]`.
    pub bures: f64,
}

pub fn check_block(p: &PositiveMatrix, q: &PositiveMatrix, r: &PositiveMatrix) -> Result<BlockCheck> {
    let sys = build_block_system(p, q, r)?;
    let ex = extract_from_block(&sys);
    let target = uhlmann(p, r)? + uhlmann(q, r)?;
    let scale_obj = target.max((p.trace() * r.trace()).sqrt() + (q.trace() * r.trace()).sqrt());
    let f = fidelity_at(p, q, r)?;
    let scale_f = fidelity_scale(p, q, f.norm());
    let b = generalized_bures_sq(p, q, r)?;
    Ok(BlockCheck {
        min_eigenvalue: sys.min_eigenvalue()?,
        feasibility: sys.feasibility_residual(),
        objective: (sys.objective() - target).abs() / scale_obj,
        fidelity: ((ex.fidelity.to_complex() - f).norm() / scale_f)
            .max((ex.re_fidelity - f.re).abs() / scale_f),
        bures: (ex.bures_sq - b).abs() / (p.trace() + q.trace()),
    })
}

/// `(M^{1/2} ⊗ Uᵀ)|Ω⟩` with `|Ω⟩ = Σ|i,i⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct PurificationVector {
    pub vector: DVector<Complex64>,
    /// The unitary freedom applied on the second factor.
    pub unitary: UnitaryMatrix,
}

pub fn bell_vector(d: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(d * d);
    for i in 0..d {
        v[i * d + i] = c(1.0);
    }
    v
}

pub fn purification(m: &PositiveMatrix, u: &UnitaryMatrix) -> Result<PurificationVector> {
    check_dims(m.dim(), u.dim())?;
    let op = kron(m.sqrt().as_matrix(), &u.as_matrix().transpose());
    Ok(PurificationVector {
        vector: op * bell_vector(m.dim()),
        unitary: u.clone(),
    })
}

impl PurificationVector {
    pub fn dim(&self) -> usize {
        self.unitary.dim()
    }

    /// Trace over the second tensor factor.
    pub fn partial_trace(&self) -> CMatrix {
        let d = self.dim();
        CMatrix::from_fn(d, d, |i, j| {
            (0..d)
                .map(|k| self.vector[i * d + k] * self.vector[j * d + k].conj())
                .sum()
        })
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn overlap(&self, other: &PurificationVector) -> Complex64 {
        self.vector.dotc(&other.vector)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PurificationCheck {
    pub overlap: ComplexScalar,
    pub fidelity: ComplexScalar,
    /// `|overlap - F_R| / max(|F_R|, √(Tr P · Tr Q))`.
    pub residual: f64,
    /// Largest `‖Tr₂ |ψ⟩⟨ψ| - M‖_F` over both purifications.
    pub partial_trace_residual: f64,
}

/// Overlap of `(P^{1/2} ⊗ U_Pᵀ)|Ω⟩` and `(Q^{1/2} ⊗ U_Qᵀ)|Ω⟩` against `F_R(P,Q)`.
pub fn check_purification(p: &PositiveMatrix, q: &PositiveMatrix, r: &PositiveMatrix) -> Result<PurificationCheck> {
    let f = polar_factors(p, q, r)?;
    let vp = purification(p, &f.u_p)?;
    let vq = purification(q, &f.u_q)?;
    let overlap = vp.overlap(&vq);
    let fid = fidelity_at(p, q, r)?;
    let partial_trace_residual = frobenius(&(vp.partial_trace() - p.as_matrix()))
        .max(frobenius(&(vq.partial_trace() - q.as_matrix())));
    Ok(PurificationCheck {
        overlap: overlap.into(),
        fidelity: fid.into(),
        residual: (overlap - fid).norm() / fidelity_scale(p, q, fid.norm()),
        partial_trace_residual,
    })
}

/// `|det(U_Q U_P*) - 1|`.
pub fn check_su_d(p: &PositiveMatrix, q: &PositiveMatrix, r: &PositiveMatrix) -> Result<f64> {
    Ok((unitary_factor(p, q, r)?.determinant() - c(1.0)).norm())
}
