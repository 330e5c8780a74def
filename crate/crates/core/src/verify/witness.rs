//! Rebit bases, stored existence witnesses and the monotonicity scan.
//!
//! A rebit is a real 2×2 density `(I + xX + zZ)/2` with `x² + z² ≤ 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fidelity::{classical_fidelity, fidelity_at, polar_fidelity_parts, uhlmann};
use crate::linalg::{ComplexScalar, HermitianMatrix, MatrixJson, PositiveMatrix};
use crate::manifold::{geodesic_point, MetricKind};

/// Distance kept from the boundary of the Bloch disk so every base is positive definite.
pub const DISK_MARGIN: f64 = 1e-6;
pub const MIN_RESOLUTION: usize = 16;
/// Smallest gap or negativity that counts as a witness.
pub const WITNESS_MARGIN: f64 = 1e-3;
/// Bound on `|Re F_R - F^U|` along the geodesic.
pub const GEODESIC_VARIATION_TOL: f64 = 1e-8;
/// Bound on `|Im F_R|` along the geodesic.
pub const GEODESIC_IMAGINARY_TOL: f64 = 1e-10;
const REBIT_TOL: f64 = 1e-10;

/// Hermitian `(I + xX + zZ)/2`; positive semidefinite when `x² + z² ≤ 1`.
pub fn rebit_matrix(x: f64, z: f64) -> HermitianMatrix {
    HermitianMatrix::from_real(2, &[(1.0 + z) / 2.0, x / 2.0, x / 2.0, (1.0 - z) / 2.0])
        .expect("rebit entries form a symmetric matrix")
}

/// Positive definite rebit; requires `x² + z² < 1`.
pub fn rebit(x: f64, z: f64) -> Result<PositiveMatrix> {
    if !(x * x + z * z < 1.0) {
        return Err(Error::NotRebit(format!(
            "Bloch vector ({x}, {z}) is not inside the unit disk"
        )));
    }
    PositiveMatrix::with_floor(rebit_matrix(x, z), 0.0)
}

/// Bloch coordinates `(x, z)` of a real unit-trace 2×2 positive matrix.
pub fn rebit_coordinates(m: &HermitianMatrix) -> Result<(f64, f64)> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    let a = m.as_matrix();
    if a.iter().any(|z| z.im.abs() > REBIT_TOL) {
        return Err(Error::NotRebit("entries must be real".into()));
    }
    if (m.trace() - 1.0).abs() > REBIT_TOL {
        return Err(Error::NotRebit(format!(
            "trace must be 1, found {}",
            m.trace()
        )));
    }
    let (x, z) = (2.0 * a[(0, 1)].re, a[(0, 0)].re - a[(1, 1)].re);
    if x * x + z * z > 1.0 + REBIT_TOL {
        return Err(Error::NotRebit(format!(
            "Bloch vector ({x}, {z}) lies outside the unit disk"
        )));
    }
    Ok((x, z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RebitPoint {
    pub x: f64,
    pub z: f64,
    pub value: ComplexScalar,
}

/// `F_R(P,Q)` over rebit bases `R` on a square grid clipped to the open disk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RebitGrid {
    pub resolution: usize,
    pub margin: f64,
    /// Ordered by `x`, then `z`.
    pub points: Vec<RebitPoint>,
}

fn axis(resolution: usize, k: usize) -> f64 {
    -1.0 + 2.0 * k as f64 / (resolution - 1) as f64
}

pub fn rebit_grid(p: &HermitianMatrix, q: &HermitianMatrix, resolution: usize, margin: f64) -> Result<RebitGrid> {
    rebit_coordinates(p)?;
    rebit_coordinates(q)?;
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::InvalidArgument(format!(
            "disk margin must lie in [0, 1), got {margin}"
        )));
    }
    let cells: Vec<(f64, f64)> = (0..resolution)
        .flat_map(|i| (0..resolution).map(move |k| (axis(resolution, i), axis(resolution, k))))
        .filter(|(x, z)| x * x + z * z < 1.0 - margin)
        .collect();
    let points = cells
        .par_iter()
        .map(|&(x, z)| {
            let value = fidelity_at(p, q, &rebit(x, z)?)?;
            Ok(RebitPoint {
                x,
                z,
                value: value.into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RebitGrid {
        resolution,
        margin,
        points,
    })
}

/// A base on the Bures-Wasserstein geodesic, with its trace-normalized Bloch coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicSample {
    pub t: f64,
    pub x: f64,
    pub z: f64,
    pub value: ComplexScalar,
}

/// `F_R(P,Q)` at `R = γ^BW_{PQ}(t)`, `t = 0, 0.1, …, 1`.
pub fn geodesic_samples(p: &PositiveMatrix, q: &PositiveMatrix) -> Result<Vec<GeodesicSample>> {
    rebit_coordinates(p)?;
    rebit_coordinates(q)?;
    (0..=10)
        .map(|k| {
            let t = k as f64 / 10.0;
            let r = geodesic_point(MetricKind::BuresWasserstein, p, q, t)?;
            let (x, z) = rebit_coordinates(&r.normalized())?;
            Ok(GeodesicSample {
                t,
                x,
                z,
                value: fidelity_at(p, q, &r)?.into(),
            })
        })
        .collect()
}

/// Named pairs shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessPair {
    /// Commuting pair whose base-dependent fidelity leaves the classical value.
    Commuting,
    /// Pair with bases where `Re F_R` is negative.
    NegativeReal,
    /// `diag(3/4, 1/4)` and `[[1/2, 1/4], [1/4, 1/2]]`.
    Oracle,
}

impl WitnessPair {
    pub const ALL: [WitnessPair; 3] = [
        WitnessPair::Commuting,
        WitnessPair::NegativeReal,
        WitnessPair::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessPair::Commuting => "commuting",
            WitnessPair::NegativeReal => "negative-real",
            WitnessPair::Oracle => "oracle",
        }
    }

    /// Bloch coordinates `((x_P, z_P), (x_Q, z_Q))`.
    pub fn coordinates(self) -> [(f64, f64); 2] {
        match self {
            WitnessPair::Commuting => [(0.0, 0.6), (0.0, -0.2)],
            WitnessPair::NegativeReal => [(0.95, 0.0), (0.0, 0.95)],
            WitnessPair::Oracle => [(0.0, 0.5), (0.5, 0.0)],
        }
    }

    /// Stored base exhibiting the pair's claim.
    pub fn base(self) -> (f64, f64) {
        match self {
            WitnessPair::Commuting => (0.7, 0.1),
            WitnessPair::NegativeReal => (-0.525, -0.85),
            WitnessPair::Oracle => (0.0, 0.0),
        }
    }

    pub fn states(self) -> (PositiveMatrix, PositiveMatrix) {
        let [(xp, zp), (xq, zq)] = self.coordinates();
        (
            rebit(xp, zp).expect("stored witness lies in the disk"),
            rebit(xq, zq).expect("stored witness lies in the disk"),
        )
    }
}

impl std::str::FromStr for WitnessPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WitnessPair::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown witness pair {s:?}")))
    }
}

/// One re-verified existence claim about rebit bases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig1Witness {
    pub name: String,
    pub claim: String,
    pub p: MatrixJson,
    pub q: MatrixJson,
    pub r: Option<MatrixJson>,
    pub value: ComplexScalar,
    pub reference: f64,
    /// How far the witness clears its threshold; negative when it fails.
    pub margin: f64,
    pub passed: bool,
}

fn witness(name: &str, claim: &str, pair: WitnessPair, r: Option<&PositiveMatrix>) -> (PositiveMatrix, PositiveMatrix, Fig1Witness) {
    let (p, q) = pair.states();
    let w = Fig1Witness {
        name: name.into(),
        claim: claim.into(),
        p: MatrixJson::from_matrix(p.as_matrix()),
        q: MatrixJson::from_matrix(q.as_matrix()),
        r: r.map(|r| MatrixJson::from_matrix(r.as_matrix())),
        value: ComplexScalar::new(f64::NAN, f64::NAN),
        reference: f64::NAN,
        margin: f64::NEG_INFINITY,
        passed: false,
    };
    (p, q, w)
}

fn fail(mut w: Fig1Witness, e: Error) -> Fig1Witness {
    w.claim = format!("{} (error: {e})", w.claim);
    w
}

/// Commuting `P, Q` and a base with `|F_R(P,Q) - Σ√(p_i q_i)| ≥ WITNESS_MARGIN`.
pub fn commuting_gap_witness() -> Fig1Witness {
    let pair = WitnessPair::Commuting;
    let (x, z) = pair.base();
    let r = rebit(x, z).expect("stored base lies in the disk");
    let (p, q, mut w) = witness(
        "commuting-gap",
        "commuting pair whose base-dependent fidelity differs from the classical fidelity",
        pair,
        Some(&r),
    );
    let run = || -> Result<(ComplexScalar, f64)> {
        let f = fidelity_at(&p, &q, &r)?;
        let pd = [p.as_matrix()[(0, 0)].re, p.as_matrix()[(1, 1)].re];
        let qd = [q.as_matrix()[(0, 0)].re, q.as_matrix()[(1, 1)].re];
        Ok((f.into(), classical_fidelity(&pd, &qd)?))
    };
    match run() {
        Ok((value, reference)) => {
            w.value = value;
            w.reference = reference;
            w.margin = (value.to_complex() - reference).norm() - WITNESS_MARGIN;
            w.passed = w.margin >= 0.0;
            w
        }
        Err(e) => fail(w, e),
    }
}

/// A base with `Re F_R(P,Q) ≤ -WITNESS_MARGIN`.
pub fn negative_real_witness() -> Fig1Witness {
    let pair = WitnessPair::NegativeReal;
    let (x, z) = pair.base();
    let r = rebit(x, z).expect("stored base lies in the disk");
    let (p, q, mut w) = witness(
        "negative-real",
        "base at which the real part of the base-dependent fidelity is negative",
        pair,
        Some(&r),
    );
    match fidelity_at(&p, &q, &r) {
        Ok(f) => {
            w.value = f.into();
            w.reference = 0.0;
            w.margin = -f.re - WITNESS_MARGIN;
            w.passed = w.margin >= 0.0;
            w
        }
        Err(e) => fail(w, e),
    }
}

/// `F_R(P,Q) = F^U(P,Q)` at every sampled base on the Bures-Wasserstein geodesic.
pub fn geodesic_witness(pair: WitnessPair) -> Fig1Witness {
    let (p, q, mut w) = witness(
        "geodesic-constant",
        "the base-dependent fidelity equals the Uhlmann fidelity along the Bures-Wasserstein geodesic",
        pair,
        None,
    );
    let run = || -> Result<(f64, f64, f64)> {
        let u = uhlmann(&p, &q)?;
        let samples = geodesic_samples(&p, &q)?;
        let re = samples.iter().map(|s| (s.value.re - u).abs()).fold(0.0, f64::max);
        let im = samples.iter().map(|s| s.value.im.abs()).fold(0.0, f64::max);
        Ok((u, re, im))
    };
    match run() {
        Ok((u, re, im)) => {
            w.value = ComplexScalar::new(re, im);
            w.reference = u;
            w.margin = (GEODESIC_VARIATION_TOL - re).min(GEODESIC_IMAGINARY_TOL - im);
            w.passed = w.margin >= 0.0;
            w
        }
        Err(e) => fail(w, e),
    }
}

/// The three stored rebit witnesses, recomputed.
pub fn fig1_witnesses() -> Vec<Fig1Witness> {
    vec![
        commuting_gap_witness(),
        negative_real_witness(),
        geodesic_witness(WitnessPair::Oracle),
    ]
}

/// `F_{P^x}(P,Q)`, `F_{Q^x}(P,Q)` and their mean over a grid of `x`.
///
/// Monotonicity in `x` is only observed, never asserted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub grid: Vec<f64>,
    pub f_px: Vec<f64>,
    pub f_qx: Vec<f64>,
    pub polar: Vec<f64>,
    pub max_imaginary: f64,
    /// Any sequence that decreases somewhere as `x` grows.
    pub violation: bool,
}

fn decreases(v: &[f64]) -> bool {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    v.windows(2).any(|w| w[1] < w[0] - 1e-12 * scale)
}

pub fn monotonicity_scan(p: &PositiveMatrix, q: &PositiveMatrix, grid: &[f64]) -> Result<MonotonicityReport> {
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut f_px = Vec::with_capacity(sorted.len());
    let mut f_qx = Vec::with_capacity(sorted.len());
    let mut max_imaginary: f64 = 0.0;
    for &x in &sorted {
        let (a, b) = polar_fidelity_parts(p, q, x)?;
        max_imaginary = max_imaginary.max(a.im.abs()).max(b.im.abs());
        f_px.push(a.re);
        f_qx.push(b.re);
    }
    let polar: Vec<f64> = f_px.iter().zip(&f_qx).map(|(a, b)| (a + b) / 2.0).collect();
    let violation = decreases(&f_px) || decreases(&f_qx) || decreases(&polar);
    Ok(MonotonicityReport {
        grid: sorted,
        f_px,
        f_qx,
        polar,
        max_imaginary,
        violation,
    })
}
