//! Seeded randomized suite over every identity the crate implements.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::block::{check_block, check_purification, check_su_d};
use super::paths::{check_path, fidelity_scale, PathId, IMAGINARY_TOL_RATIO};
use super::witness::{fig1_witnesses, monotonicity_scan, Fig1Witness, MonotonicityReport, WitnessPair};
use crate::barycenter::{bw_barycenter, check_barycenter_identity, StateEnsemble, DEFAULT_MAX_ITER};
use crate::divergence::{classical_renyi, generalized_trace_functional, RenyiKind};
use crate::error::{Error, Result};
use crate::fidelity::{
    classical_fidelity, fidelity_at, generalized_bures, generalized_bures_sq, generalized_fidelity, holevo,
    matsumoto, uhlmann, FidelityForm,
};
use crate::linalg::{direct_sum, kron, relative_frobenius, HermitianMatrix, PositiveMatrix, TrialRng};
use crate::manifold::{geodesic_point, log_map, MetricKind, TangentVector};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "BURES_GEOM_THREADS";

/// Reference values for `P0 = diag(3/4, 1/4)`, `Q0 = [[1/2, 1/4], [1/4, 1/2]]`.
pub const ORACLE_UHLMANN: f64 = 0.935414;
pub const ORACLE_HOLEVO: f64 = 0.933013;
pub const ORACLE_MATSUMOTO: f64 = 0.925820;
pub const ORACLE_TOL: f64 = 5e-6;

const RENYI_ORDERS: [f64; 4] = [0.3, 0.7, 2.0, 3.0];
const BARYCENTER_SIZES: [usize; 3] = [2, 3, 5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Base relative tolerance; each check scales it by a fixed factor.
    pub tol: f64,
    /// Condition-number cap for random positive matrices.
    pub cond_cap: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4, 6, 8],
            trials: 200,
            seed: 42,
            tol: 1e-8,
            cond_cap: 1e6,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.dims.iter().find(|d| !(2..=64).contains(*d)) {
            return Err(Error::InvalidArgument(format!(
                "dimensions must lie in 2..=64, got {d}"
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if !(self.cond_cap >= 1.0 && self.cond_cap.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "condition cap must be at least 1, got {}",
                self.cond_cap
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tol {
    /// Multiple of the configured tolerance.
    Rel(f64),
    Fixed(f64),
}

impl Tol {
    fn resolve(self, base: f64) -> f64 {
        match self {
            Tol::Rel(k) => k * base,
            Tol::Fixed(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialId {
    pub d: usize,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub failures: usize,
    pub worst: Option<TrialId>,
    pub first_error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    pub label: String,
    pub report: MonotonicityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckReport>,
    pub witnesses: Vec<Fig1Witness>,
    /// Observed only; never affects `passed`.
    pub monotonicity: Vec<ScanEntry>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }
}

type TrialFn = fn(&mut TrialRng, usize, f64) -> Result<Vec<f64>>;

struct Group {
    checks: &'static [(&'static str, Tol)],
    run: TrialFn,
}

const GROUPS: &[Group] = &[
    Group {
        checks: &[("named-reductions", Tol::Rel(0.1))],
        run: named_reductions,
    },
    Group {
        checks: &[("three-forms", Tol::Rel(0.1))],
        run: three_forms,
    },
    Group {
        checks: &[("tangent-identity", Tol::Rel(1.0))],
        run: tangent_identity,
    },
    Group {
        checks: &[
            ("distance-symmetry", Tol::Fixed(0.0)),
            ("distance-identity", Tol::Rel(10.0)),
            ("distance-positivity", Tol::Fixed(0.0)),
            ("triangle-inequality", Tol::Rel(0.01)),
        ],
        run: distance_axioms,
    },
    Group {
        checks: &[
            ("path-1", Tol::Rel(1.0)),
            ("path-2", Tol::Rel(1.0)),
            ("path-3", Tol::Rel(1.0)),
            ("path-4", Tol::Rel(1.0)),
            ("path-5", Tol::Rel(1.0)),
            ("path-6", Tol::Rel(1.0)),
            ("path-7", Tol::Rel(1.0)),
            ("path-8", Tol::Rel(1.0)),
            ("path-9", Tol::Rel(1.0)),
            ("path-10", Tol::Rel(1.0)),
            ("path-11", Tol::Rel(1.0)),
            ("path-5-reality", Tol::Rel(IMAGINARY_TOL_RATIO)),
            ("path-6-reality", Tol::Rel(IMAGINARY_TOL_RATIO)),
        ],
        run: paths,
    },
    Group {
        checks: &[
            ("block-psd", Tol::Rel(0.01)),
            ("block-feasibility", Tol::Fixed(0.0)),
            ("block-objective", Tol::Rel(0.1)),
            ("block-fidelity", Tol::Rel(0.1)),
            ("block-bures", Tol::Rel(0.1)),
        ],
        run: block,
    },
    Group {
        checks: &[
            ("purification-overlap", Tol::Rel(0.1)),
            ("purification-partial-trace", Tol::Rel(0.01)),
        ],
        run: purification,
    },
    Group {
        checks: &[("su-d", Tol::Rel(1.0))],
        run: su_d,
    },
    Group {
        checks: &[
            ("barycenter-identity", Tol::Rel(100.0)),
            ("barycenter-geodesic", Tol::Rel(10.0)),
        ],
        run: barycenter,
    },
    Group {
        checks: &[
            ("renyi-recovery", Tol::Rel(1.0)),
            ("renyi-commuting", Tol::Rel(0.01)),
        ],
        run: renyi,
    },
    Group {
        checks: &[
            ("quantization", Tol::Rel(1.0)),
            ("conjugate-symmetry", Tol::Rel(1.0)),
            ("multiplicativity", Tol::Rel(1.0)),
            ("additivity", Tol::Rel(1.0)),
            ("unitary-invariance", Tol::Rel(1.0)),
            ("unitary-contravariance", Tol::Rel(1.0)),
            ("scaling", Tol::Rel(1.0)),
            ("uhlmann-bound", Tol::Rel(1.0)),
            ("orthogonal-support", Tol::Rel(1.0)),
            ("commuting-base-reality", Tol::Rel(0.01)),
            ("named-ordering", Tol::Rel(1.0)),
            ("gamma-commuting", Tol::Rel(1.0)),
        ],
        run: properties,
    },
];

/// Names of every check `run_suite` reports, in report order.
pub fn check_names() -> Vec<&'static str> {
    let mut names = vec!["oracle-triple"];
    names.extend(GROUPS.iter().flat_map(|g| g.checks.iter().map(|(n, _)| *n)));
    names.extend(["fig1-commuting-gap", "fig1-negative-real", "fig1-geodesic-constant"]);
    names
}

fn stream(seed: u64, group: usize, d: usize) -> u64 {
    seed ^ (((group as u64) << 16) | d as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn triple(rng: &mut TrialRng, d: usize, cap: f64) -> (PositiveMatrix, PositiveMatrix, PositiveMatrix) {
    (rng.density(d, cap), rng.density(d, cap), rng.positive(d, cap))
}

fn rel(a: Complex64, b: Complex64, scale: f64) -> f64 {
    (a - b).norm() / scale
}

fn named_reductions(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let p = rng.density(d, cap);
    let q = rng.density(d, cap);
    let (u, h, m) = (uhlmann(&p, &q)?, holevo(&p, &q)?, matsumoto(&p, &q)?);
    let cases = [
        (p.clone(), u),
        (q.clone(), u),
        (PositiveMatrix::identity(d), h),
        (p.inverse(), m),
        (q.inverse(), m),
    ];
    let mut worst: f64 = 0.0;
    for (r, target) in cases {
        let f = fidelity_at(&p, &q, &r)?;
        worst = worst.max(rel(f, target.into(), fidelity_scale(&p, &q, target)));
    }
    Ok(vec![worst])
}

fn three_forms(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let (p, q, r) = triple(rng, d, cap);
    let reference = generalized_fidelity(&p, &q, &r, FidelityForm::Definition)?.complex();
    let scale = fidelity_scale(&p, &q, reference.norm());
    let mut worst: f64 = 0.0;
    for form in [FidelityForm::PolarUnitary, FidelityForm::GeometricMean] {
        let v = generalized_fidelity(&p, &q, &r, form)?.complex();
        worst = worst.max(rel(v, reference, scale));
    }
    Ok(vec![worst])
}

fn tangent_identity(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let (p, q, r) = triple(rng, d, cap);
    let b = generalized_bures_sq(&p, &q, &r)?;
    let lp = log_map(MetricKind::BuresWasserstein, &r, &p)?;
    let lq = log_map(MetricKind::BuresWasserstein, &r, &q)?;
    let diff = TangentVector::new(MetricKind::BuresWasserstein, r.clone(), lp.direction.sub(&lq.direction)?)?;
    let n = diff.norm_sq()?;
    Ok(vec![(b - n).abs() / (p.trace() + q.trace())])
}

fn distance_axioms(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let (p, q, r) = triple(rng, d, cap);
    let s = rng.density(d, cap);
    let bpq = generalized_bures(&p, &q, &r)?;
    let bqp = generalized_bures(&q, &p, &r)?;
    let symmetry = if bpq == bqp { 0.0 } else { (bpq - bqp).abs().max(f64::MIN_POSITIVE) };
    let identity = generalized_bures(&p, &p, &r)? / p.trace().sqrt();
    let apart = relative_frobenius(p.as_matrix(), q.as_matrix()) * p.frobenius() > 1e-7;
    let positivity = if apart && bpq <= 0.0 { 1.0 } else { 0.0 };
    let slack = generalized_bures(&p, &s, &r)? + generalized_bures(&s, &q, &r)? - bpq;
    Ok(vec![symmetry, identity, positivity, (-slack).max(0.0)])
}

fn paths(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let p = rng.density(d, cap);
    let q = rng.density(d, cap);
    let mut out = Vec::with_capacity(13);
    let mut reality = Vec::with_capacity(2);
    for path in PathId::all() {
        let report = check_path(path, &p, &q, 9, f64::INFINITY);
        if let Some(e) = report.error {
            return Err(Error::InvalidArgument(format!("{path}: {e}")));
        }
        out.push(report.max_residual);
        if let Some(im) = report.max_imaginary {
            reality.push(im);
        }
    }
    out.extend(reality);
    Ok(out)
}

fn block(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let (p, q, r) = triple(rng, d, cap);
    let c = check_block(&p, &q, &r)?;
    Ok(vec![(-c.min_eigenvalue).max(0.0), c.feasibility, c.objective, c.fidelity, c.bures])
}

fn purification(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let (p, q, r) = triple(rng, d, cap);
    let c = check_purification(&p, &q, &r)?;
    Ok(vec![c.residual, c.partial_trace_residual])
}

fn su_d(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let (p, q, r) = triple(rng, d, cap);
    Ok(vec![check_su_d(&p, &q, &r)?])
}

fn barycenter(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let mut identity: f64 = 0.0;
    for n in BARYCENTER_SIZES {
        let states: Vec<_> = (0..n).map(|_| rng.density(d, cap)).collect();
        let rep = check_barycenter_identity(&states, f64::INFINITY)?;
        identity = identity.max(rep.residual).max(rep.imaginary_residual);
    }
    let a = rng.density(d, cap);
    let b = rng.density(d, cap);
    let t = rng.uniform(0.05, 0.95);
    let ens = StateEnsemble::new(vec![a.clone(), b.clone()], vec![1.0 - t, t])?;
    let bary = bw_barycenter(&ens, 1e-12, DEFAULT_MAX_ITER)?;
    let geo = geodesic_point(MetricKind::BuresWasserstein, &a, &b, t)?;
    Ok(vec![identity, relative_frobenius(bary.sigma.as_matrix(), geo.as_matrix())])
}

fn normalized(v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

fn renyi(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let p = rng.density(d, cap);
    let q = rng.density(d, cap);
    let mut recovery: f64 = 0.0;
    for alpha in RENYI_ORDERS {
        for kind in RenyiKind::ALL {
            let f = generalized_trace_functional(&p, &q, &kind.base(&p, &q, alpha)?, alpha)?;
            let target = kind.quantity(&p, &q, alpha)?;
            recovery = recovery.max((f.to_complex() - target).norm() / target.abs());
        }
    }
    let a = normalized(rng.diagonal_positive(d, 0.05, 1.0));
    let b = normalized(rng.diagonal_positive(d, 0.05, 1.0));
    let (pa, pb) = (PositiveMatrix::from_diagonal(&a)?, PositiveMatrix::from_diagonal(&b)?);
    let mut commuting: f64 = 0.0;
    for alpha in RENYI_ORDERS {
        let classical = classical_renyi(&a, &b, alpha)?;
        for kind in RenyiKind::ALL {
            commuting = commuting.max((kind.divergence(&pa, &pb, alpha)? - classical).abs());
        }
    }
    Ok(vec![recovery, commuting])
}

/// `P = R^{-1/2} W D₁ W* R^{-1/2}`, `Q = R^{-1/2} W D₂ W* R^{-1/2}`, so that
/// `PRQ = QRP`.
pub fn gamma_commuting_triple(rng: &mut TrialRng, d: usize, cap: f64) -> Result<(PositiveMatrix, PositiveMatrix, PositiveMatrix)> {
    let r = rng.positive(d, cap);
    let w = rng.unitary(d);
    let frame = r.inv_sqrt().as_matrix() * w.as_matrix();
    let mut build = || {
        let diag = HermitianMatrix::from_diagonal(&rng.diagonal_positive(d, 0.1, 2.0));
        PositiveMatrix::new(diag.congruence(&frame)?)
    };
    let p = build()?;
    let q = build()?;
    Ok((p, q, r))
}

fn properties(rng: &mut TrialRng, d: usize, cap: f64) -> Result<Vec<f64>> {
    let (p, q, r) = triple(rng, d, cap);
    let f = fidelity_at(&p, &q, &r)?;
    let scale = fidelity_scale(&p, &q, f.norm());

    let a = normalized(rng.diagonal_positive(d, 0.05, 1.0));
    let b = normalized(rng.diagonal_positive(d, 0.05, 1.0));
    let rr = rng.diagonal_positive(d, 0.05, 3.0);
    let classical = classical_fidelity(&a, &b)?;
    let fq = fidelity_at(
        &HermitianMatrix::from_diagonal(&a),
        &HermitianMatrix::from_diagonal(&b),
        &PositiveMatrix::from_diagonal(&rr)?,
    )?;
    let quantization = rel(fq, classical.into(), 1.0);

    let conjugate = rel(fidelity_at(&q, &p, &r)?, f.conj(), scale);

    let (pa, qa, ra) = triple(rng, 2, cap);
    let g = fidelity_at(&pa, &qa, &ra)?;
    let kp = PositiveMatrix::from_matrix(kron(p.as_matrix(), pa.as_matrix()))?;
    let kq = PositiveMatrix::from_matrix(kron(q.as_matrix(), qa.as_matrix()))?;
    let kr = PositiveMatrix::from_matrix(kron(r.as_matrix(), ra.as_matrix()))?;
    let fk = fidelity_at(&kp, &kq, &kr)?;
    let multiplicativity = rel(fk, f * g, fidelity_scale(&kp, &kq, (f * g).norm()));
    let dp = PositiveMatrix::from_matrix(direct_sum(p.as_matrix(), pa.as_matrix()))?;
    let dq = PositiveMatrix::from_matrix(direct_sum(q.as_matrix(), qa.as_matrix()))?;
    let dr = PositiveMatrix::from_matrix(direct_sum(r.as_matrix(), ra.as_matrix()))?;
    let fd = fidelity_at(&dp, &dq, &dr)?;
    let additivity = rel(fd, f + g, fidelity_scale(&dp, &dq, (f + g).norm()));

    let u = rng.unitary(d);
    let um = u.as_matrix();
    let uc = um.adjoint();
    let (up, uq, ur) = (p.congruence(um)?, q.congruence(um)?, r.congruence(um)?);
    let invariance = rel(fidelity_at(&up, &uq, &ur)?, f, scale);
    let lhs = fidelity_at(&p, &q, &ur)?;
    let (cp, cq) = (p.congruence(&uc)?, q.congruence(&uc)?);
    let rhs = fidelity_at(&cp, &cq, &r)?;
    let contravariance = rel(lhs, rhs, fidelity_scale(&p, &q, rhs.norm()));

    let (sp, sq, sr) = (rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0));
    let (xp, xq) = (p.scale(sp)?, q.scale(sq)?);
    let fs = fidelity_at(&xp, &xq, &r.scale(sr)?)?;
    let k = (sp * sq).sqrt();
    let scaling = rel(fs, f * k, scale * k);

    let fu = uhlmann(&p, &q)?;
    let bound = (f.norm() - fu).max(0.0) / fu;

    let v = rng.unitary(d);
    let split = d / 2;
    let mut da = rng.diagonal_positive(d, 0.05, 1.0);
    let mut db = rng.diagonal_positive(d, 0.05, 1.0);
    da[split..].iter_mut().for_each(|x| *x = 0.0);
    db[..split].iter_mut().for_each(|x| *x = 0.0);
    let op = HermitianMatrix::from_diagonal(&da).congruence(v.as_matrix())?;
    let oq = HermitianMatrix::from_diagonal(&db).congruence(v.as_matrix())?;
    let orthogonal = fidelity_at(&op, &oq, &r)?.norm() / (op.trace() * oq.trace()).sqrt();

    let s = rng.uniform(-1.0, 1.0);
    let reality = fidelity_at(&p, &q, &p.pow(s)?)?
        .im
        .abs()
        .max(fidelity_at(&p, &q, &q.pow(s)?)?.im.abs());

    let (m, h) = (matsumoto(&p, &q)?, holevo(&p, &q)?);
    let ordering = (m - h).max(h - fu).max(0.0) / fu;

    let (gp, gq, gr) = gamma_commuting_triple(rng, d, cap)?;
    let fg = fidelity_at(&gp, &gq, &gr)?;
    let mg = matsumoto(&gp, &gq)?;
    let gamma = rel(fg, mg.into(), fidelity_scale(&gp, &gq, mg));

    Ok(vec![
        quantization,
        conjugate,
        multiplicativity,
        additivity,
        invariance,
        contravariance,
        scaling,
        bound,
        orthogonal,
        reality,
        ordering,
        gamma,
    ])
}

fn oracle_triple() -> CheckReport {
    let (p, q) = WitnessPair::Oracle.states();
    let got = (|| -> Result<[f64; 3]> {
        let rp = fidelity_at(&p, &q, &p)?.re;
        let ri = fidelity_at(&p, &q, &PositiveMatrix::identity(2))?.re;
        let rm = fidelity_at(&p, &q, &p.inverse())?.re;
        Ok([rp, ri, rm])
    })();
    let (residual, error) = match got {
        Ok(v) => (
            (v[0] - ORACLE_UHLMANN)
                .abs()
                .max((v[1] - ORACLE_HOLEVO).abs())
                .max((v[2] - ORACLE_MATSUMOTO).abs()),
            None,
        ),
        Err(e) => (f64::INFINITY, Some(e.to_string())),
    };
    single("oracle-triple", residual, ORACLE_TOL, error)
}

fn single(name: &str, residual: f64, tolerance: f64, first_error: Option<String>) -> CheckReport {
    let passed = first_error.is_none() && residual <= tolerance;
    CheckReport {
        name: name.into(),
        trials: 1,
        max_residual: residual,
        tolerance,
        failures: usize::from(!passed),
        worst: None,
        first_error,
        passed,
    }
}

fn witness_check(w: &Fig1Witness) -> CheckReport {
    let mut c = single(&format!("fig1-{}", w.name), (-w.margin).max(0.0), 0.0, None);
    c.passed = w.passed;
    c.failures = usize::from(!w.passed);
    c
}

/// Runs `f` on a pool capped by [`THREADS_ENV`] when it is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|n| *n > 0);
    match cap.map(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build()) {
        Some(Ok(pool)) => pool.install(f),
        _ => f(),
    }
}

struct Accumulator {
    trials: usize,
    max_residual: f64,
    failures: usize,
    worst: Option<TrialId>,
    first_error: Option<String>,
}

/// Runs every check on `trials` seeded trials per dimension.
///
/// Trials run in parallel; results are folded in (check, dimension, trial)
/// order so the report depends only on the configuration.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    if config.trials == 0 {
        return SuiteReport {
            config: config.clone(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            monotonicity: Vec::new(),
            passed: true,
        };
    }
    let jobs: Vec<(usize, usize, usize)> = (0..GROUPS.len())
        .flat_map(|g| {
            config
                .dims
                .iter()
                .flat_map(move |&d| (0..config.trials).map(move |t| (g, d, t)))
        })
        .collect();
    let (outcomes, monotonicity) = with_thread_cap(|| {
        let outcomes: Vec<Result<Vec<f64>>> = jobs
            .par_iter()
            .map(|&(g, d, t)| {
                let mut rng = TrialRng::new(stream(config.seed, g, d), t as u64);
                (GROUPS[g].run)(&mut rng, d, config.cond_cap)
            })
            .collect();
        (outcomes, scans(config))
    });

    let mut checks = vec![oracle_triple()];
    let mut offset = 0;
    for (g, group) in GROUPS.iter().enumerate() {
        let mut acc: Vec<Accumulator> = group
            .checks
            .iter()
            .map(|_| Accumulator {
                trials: 0,
                max_residual: 0.0,
                failures: 0,
                worst: None,
                first_error: None,
            })
            .collect();
        let tols: Vec<f64> = group.checks.iter().map(|(_, t)| t.resolve(config.tol)).collect();
        for (k, outcome) in outcomes[offset..].iter().enumerate() {
            let (jg, d, trial) = jobs[offset + k];
            if jg != g {
                break;
            }
            let id = TrialId { d, trial };
            match outcome {
                Ok(res) => {
                    for ((a, r), tol) in acc.iter_mut().zip(res).zip(&tols) {
                        a.trials += 1;
                        if !(*r <= *tol) {
                            a.failures += 1;
                        }
                        if a.worst.is_none() || !(*r <= a.max_residual) {
                            a.max_residual = *r;
                            a.worst = Some(id);
                        }
                    }
                }
                Err(e) => {
                    for a in acc.iter_mut() {
                        a.trials += 1;
                        a.failures += 1;
                        a.first_error
                            .get_or_insert_with(|| format!("d={d} trial={trial}: {e}"));
                    }
                }
            }
        }
        offset += config.dims.len() * config.trials;
        for ((name, _), (a, tol)) in group.checks.iter().zip(acc.into_iter().zip(tols)) {
            checks.push(CheckReport {
                name: (*name).into(),
                trials: a.trials,
                max_residual: a.max_residual,
                tolerance: tol,
                passed: a.failures == 0,
                failures: a.failures,
                worst: a.worst,
                first_error: a.first_error,
            });
        }
    }
    let witnesses = fig1_witnesses();
    checks.extend(witnesses.iter().map(witness_check));
    let passed = checks.iter().all(|c| c.passed);
    SuiteReport {
        config: config.clone(),
        checks,
        witnesses,
        monotonicity,
        passed,
    }
}

fn scans(config: &SuiteConfig) -> Vec<ScanEntry> {
    let grid: Vec<f64> = (0..=20).map(|k| -1.0 + k as f64 / 10.0).collect();
    let mut pairs = vec![("oracle".to_string(), WitnessPair::Oracle.states())];
    for &d in &config.dims {
        let mut rng = TrialRng::new(stream(config.seed, GROUPS.len(), d), 0);
        pairs.push((format!("random d={d}"), (rng.density(d, config.cond_cap), rng.density(d, config.cond_cap))));
    }
    pairs
        .into_iter()
        .filter_map(|(label, (p, q))| {
            monotonicity_scan(&p, &q, &grid)
                .ok()
                .map(|report| ScanEntry { label, report })
        })
        .collect()
}
