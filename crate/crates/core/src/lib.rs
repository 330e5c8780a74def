//! Generalized quantum fidelity and Bures-Wasserstein geometry on positive
//! definite matrices.
//!
//! * [`linalg`]: Hermitian matrix types, spectral calculus, polar factors,
//!   geometric means and seeded random matrices.
//! * [`manifold`]: Bures-Wasserstein, affine-invariant and Euclidean structures.
//! * [`fidelity`]: named fidelities, the base-dependent fidelity `F_R(P, Q)` and
//!   the distance built on it.
//! * [`barycenter`]: Bures-Wasserstein barycenters and multivariate fidelities.
//! * [`divergence`]: Rényi-type divergences and the base-dependent trace functional.
//! * [`verify`]: numerical checks of the identities above.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fidelity;
pub mod barycenter;
pub mod divergence;
pub mod linalg;
pub mod manifold;
pub mod verify;

pub use error::{Error, Result};
