//! The eleven base paths between two fixed matrices and what `F_R(P,Q)` does
//! along each.
//!
//! | path | base `R(t)` | behaviour |
//! |---|---|---|
//! | 1 | `[γ^BW_{P⁻¹Q⁻¹}(t)]⁻¹` | constant `F^U` |
//! | 2 | `γ^BW_{PQ}(t)` | constant `F^U` |
//! | 3 | `[γ^BW_{P⁻¹Q}(t)]⁻¹` | equal to path 8 |
//! | 4 | `γ^BW_{PQ⁻¹}(t)` | equal to path 7 |
//! | 5 | `γ^AI_{PP⁻¹}(t) = P^{1-2t}` | `F^U`, `F^H`, `F^M` at `t = 0, ½, 1`; real |
//! | 6 | `γ^AI_{QQ⁻¹}(t) = Q^{1-2t}` | as path 5 |
//! | 7 | `γ^BW_{QP⁻¹}(t)` | equal to path 4 |
//! | 8 | `[γ^BW_{Q⁻¹P}(t)]⁻¹` | equal to path 3 |
//! | 9 | `γ^AI_{P⁻¹Q⁻¹}(t)` | constant `F^M` |
//! | 10 | `γ^Euc_{P⁻¹Q⁻¹}(t)` | constant `F^M` |
//! | 11 | `[γ^Euc_{PQ}(t)]⁻¹` | constant `F^M` |

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::fidelity::{fidelity_at, holevo, matsumoto, uhlmann};
use crate::linalg::{ComplexScalar, PositiveMatrix};
use crate::manifold::{geodesic_point, MetricKind};

/// Ratio between the absolute tolerance on `|Im F_R|` along paths 5 and 6 and
/// the relative tolerance used everywhere else.
pub const IMAGINARY_TOL_RATIO: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct PathId(u8);

impl PathId {
    pub fn new(id: u8) -> Result<Self> {
        if (1..=11).contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::InvalidArgument(format!(
                "path id must be in 1..=11, got {id}"
            )))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = PathId> {
        (1..=11).map(PathId)
    }

    pub fn expected(self) -> PathExpectation {
        match self.0 {
            1 | 2 => PathExpectation::UhlmannInvariant,
            9..=11 => PathExpectation::MatsumotoInvariant,
            5 | 6 => PathExpectation::NamedRecoveryAtAnchors,
            _ => PathExpectation::CovariantPair,
        }
    }

    /// The path whose fidelity values this one matches pointwise.
    pub fn partner(self) -> Option<PathId> {
        match self.0 {
            3 => Some(PathId(8)),
            8 => Some(PathId(3)),
            4 => Some(PathId(7)),
            7 => Some(PathId(4)),
            _ => None,
        }
    }
}

impl TryFrom<u8> for PathId {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        PathId::new(id)
    }
}

impl From<PathId> for u8 {
    fn from(id: PathId) -> u8 {
        id.0
    }
}

impl fmt::Display for PathId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "path {}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathExpectation {
    UhlmannInvariant,
    MatsumotoInvariant,
    CovariantPair,
    NamedRecoveryAtAnchors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathSample {
    pub t: f64,
    pub value: ComplexScalar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathReport {
    pub path: PathId,
    pub expected: PathExpectation,
    pub samples: Vec<PathSample>,
    /// Relative residual against the invariant, the partner path or the anchors.
    pub max_residual: f64,
    /// Largest `|Im F_R|`, reported for paths 5 and 6 only.
    pub max_imaginary: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub error: Option<String>,
}

fn inverse_of(m: Result<PositiveMatrix>) -> Result<PositiveMatrix> {
    Ok(m?.inverse())
}

/// Base `R` of `path` at parameter `t`.
pub fn path_base(path: PathId, p: &PositiveMatrix, q: &PositiveMatrix, t: f64) -> Result<PositiveMatrix> {
    check_dims(p.dim(), q.dim())?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "path parameter must lie in [0, 1], got {t}"
        )));
    }
    use MetricKind::*;
    let (pi, qi) = (p.inverse(), q.inverse());
    match path.0 {
        1 => inverse_of(geodesic_point(BuresWasserstein, &pi, &qi, t)),
        2 => geodesic_point(BuresWasserstein, p, q, t),
        3 => inverse_of(geodesic_point(BuresWasserstein, &pi, q, t)),
        4 => geodesic_point(BuresWasserstein, p, &qi, t),
        5 => p.pow(1.0 - 2.0 * t),
        6 => q.pow(1.0 - 2.0 * t),
        7 => geodesic_point(BuresWasserstein, q, &pi, t),
        8 => inverse_of(geodesic_point(BuresWasserstein, &qi, p, t)),
        9 => geodesic_point(AffineInvariant, &pi, &qi, t),
        10 => geodesic_point(Euclidean, &pi, &qi, t),
        _ => inverse_of(geodesic_point(Euclidean, p, q, t)),
    }
}

/// `n` evenly spaced points on `[0, 1]`, with `½` added when missing.
pub fn sample_grid(n: usize) -> Vec<f64> {
    let n = n.max(3);
    let mut grid: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
    if n.is_multiple_of(2) {
        grid.insert(n / 2, 0.5);
    }
    grid
}

pub(crate) fn fidelity_scale(p: &PositiveMatrix, q: &PositiveMatrix, reference: f64) -> f64 {
    reference.abs().max((p.trace() * q.trace()).sqrt())
}

struct PathRun {
    samples: Vec<PathSample>,
    max_residual: f64,
    max_imaginary: Option<f64>,
}

fn run_path(path: PathId, p: &PositiveMatrix, q: &PositiveMatrix, grid: &[f64]) -> Result<PathRun> {
    let values: Vec<Complex64> = grid
        .iter()
        .map(|&t| fidelity_at(p, q, &path_base(path, p, q, t)?))
        .collect::<Result<_>>()?;
    let mut max_residual: f64 = 0.0;
    let mut max_imaginary = None;
    match path.expected() {
        PathExpectation::UhlmannInvariant | PathExpectation::MatsumotoInvariant => {
            let target = if path.expected() == PathExpectation::UhlmannInvariant {
                uhlmann(p, q)?
            } else {
                matsumoto(p, q)?
            };
            let scale = fidelity_scale(p, q, target);
            for v in &values {
                max_residual = max_residual.max((v - target).norm() / scale);
            }
        }
        PathExpectation::CovariantPair => {
            let partner = path.partner().expect("covariant paths have partners");
            for (&t, v) in grid.iter().zip(&values) {
                let w = fidelity_at(p, q, &path_base(partner, p, q, t)?)?;
                max_residual = max_residual.max((v - w).norm() / fidelity_scale(p, q, w.norm()));
            }
        }
        PathExpectation::NamedRecoveryAtAnchors => {
            let anchors = [
                (0.0, uhlmann(p, q)?),
                (0.5, holevo(p, q)?),
                (1.0, matsumoto(p, q)?),
            ];
            for (t, target) in anchors {
                let k = grid.iter().position(|s| *s == t).expect("grid holds the anchors");
                max_residual = max_residual.max((values[k] - target).norm() / fidelity_scale(p, q, target));
            }
            max_imaginary = Some(values.iter().map(|v| v.im.abs()).fold(0.0, f64::max));
        }
    }
    Ok(PathRun {
        samples: grid
            .iter()
            .zip(values)
            .map(|(&t, v)| PathSample { t, value: v.into() })
            .collect(),
        max_residual,
        max_imaginary,
    })
}

/// Samples `path` at `n_points` parameters and checks its property.
///
/// `tol` bounds the relative residual; on paths 5 and 6, `|Im F_R|` is bounded
/// by `tol · IMAGINARY_TOL_RATIO` in absolute terms. Numerical errors are
/// reported as a failed verdict.
pub fn check_path(path: PathId, p: &PositiveMatrix, q: &PositiveMatrix, n_points: usize, tol: f64) -> PathReport {
    let grid = sample_grid(n_points);
    match run_path(path, p, q, &grid) {
        Ok(run) => {
            let imag_ok = run
                .max_imaginary
                .is_none_or(|im| im <= tol * IMAGINARY_TOL_RATIO);
            PathReport {
                path,
                expected: path.expected(),
                samples: run.samples,
                max_residual: run.max_residual,
                max_imaginary: run.max_imaginary,
                tolerance: tol,
                verdict: Verdict::from_pass(run.max_residual <= tol && imag_ok),
                error: None,
            }
        }
        Err(e) => PathReport {
            path,
            expected: path.expected(),
            samples: Vec::new(),
            max_residual: f64::INFINITY,
            max_imaginary: None,
            tolerance: tol,
            verdict: Verdict::Fail,
            error: Some(e.to_string()),
        },
    }
}
