//! Seeded random test matrices.
//!
//! Every generator draws from a ChaCha stream keyed by `(seed, trial)`, so a
//! trial produces the same matrices no matter which thread runs it.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::{
    c, polar_factor, CMatrix, HermitianMatrix, PositiveMatrix, SpectralDecomposition, UnitaryMatrix,
};

/// Random source for one trial of one seed.
#[derive(Debug, Clone)]
pub struct TrialRng(ChaCha20Rng);

impl TrialRng {
    pub fn new(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Self(rng)
    }

    pub fn rng(&mut self) -> &mut ChaCha20Rng {
        &mut self.0
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.random_range(lo..hi)
    }

    /// Standard complex normal: `(N + iN) / √2`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re: f64 = self.0.sample(StandardNormal);
        let im: f64 = self.0.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Ginibre matrix with i.i.d. standard complex normal entries.
    pub fn ginibre(&mut self, d: usize) -> CMatrix {
        let mut m = CMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.complex_normal();
            }
        }
        m
    }

    pub fn hermitian(&mut self, d: usize) -> HermitianMatrix {
        HermitianMatrix::from_hermitian_part(&self.ginibre(d))
    }

    /// `G G* + εI`, with `ε` the smallest shift that brings the condition number
    /// under `cond_cap`.
    pub fn positive(&mut self, d: usize, cond_cap: f64) -> PositiveMatrix {
        let g = self.ginibre(d);
        let gram = HermitianMatrix::from_hermitian_part(&(&g * g.adjoint()));
        let eig = gram.eigh().expect("Jacobi converges on Gram matrices");
        let lmin = eig.eigenvalues[0].max(0.0);
        let lmax = eig.eigenvalues[d - 1].max(f64::MIN_POSITIVE);
        // Aim slightly inside the cap so rounding in later solves cannot push it over.
        let cap = (cond_cap * (1.0 - 1e-9)).max(1.0);
        let shifted = if cap <= 1.0 {
            SpectralDecomposition {
                eigenvalues: vec![lmax; d],
                eigenvectors: eig.eigenvectors,
            }
        } else {
            let eps = ((lmax - cap * lmin) / (cap - 1.0)).max(0.0);
            let top = lmax + eps;
            SpectralDecomposition {
                eigenvalues: eig
                    .eigenvalues
                    .iter()
                    .map(|l| (l.max(0.0) + eps).max(top / cap))
                    .collect(),
                eigenvectors: eig.eigenvectors,
            }
        };
        PositiveMatrix::with_floor(shifted.reconstruct(), 0.0)
            .expect("shifted Gram matrix is positive")
    }

    pub fn density(&mut self, d: usize, cond_cap: f64) -> PositiveMatrix {
        self.positive(d, cond_cap).normalized()
    }

    /// Haar-distributed unitary, taken as the polar factor of a Ginibre matrix.
    pub fn unitary(&mut self, d: usize) -> UnitaryMatrix {
        loop {
            if let Ok(u) = polar_factor(&self.ginibre(d)) {
                return u;
            }
        }
    }

    /// Ginibre matrix conditioned to have singular values away from zero.
    pub fn invertible(&mut self, d: usize) -> CMatrix {
        let g = self.ginibre(d);
        g + CMatrix::identity(d, d) * c(2.0)
    }

    /// Unit vector drawn uniformly from the complex sphere.
    pub fn pure_state(&mut self, d: usize) -> DVector<Complex64> {
        let v = DVector::from_fn(d, |_, _| self.complex_normal());
        let n = v.norm();
        v / c(n)
    }

    /// Diagonal positive matrix with entries in `[lo, hi)`.
    pub fn diagonal_positive(&mut self, d: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..d).map(|_| self.uniform(lo, hi)).collect()
    }
}

/// Random positive definite matrix with condition number at most `cond_cap`.
pub fn random_positive(d: usize, seed: u64, cond_cap: f64) -> PositiveMatrix {
    TrialRng::new(seed, 0).positive(d, cond_cap)
}

/// Random unit-trace positive definite matrix with condition number at most `1e6`.
pub fn random_density(d: usize, seed: u64) -> PositiveMatrix {
    TrialRng::new(seed, 0).density(d, 1e6)
}

pub fn random_hermitian(d: usize, seed: u64) -> HermitianMatrix {
    TrialRng::new(seed, 0).hermitian(d)
}

pub fn random_unitary(d: usize, seed: u64) -> UnitaryMatrix {
    TrialRng::new(seed, 0).unitary(d)
}

pub fn random_invertible(d: usize, seed: u64) -> CMatrix {
    TrialRng::new(seed, 0).invertible(d)
}

pub fn random_pure_state(d: usize, seed: u64) -> DVector<Complex64> {
    TrialRng::new(seed, 0).pure_state(d)
}
