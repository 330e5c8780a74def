use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use bures_geom::barycenter::{bw_barycenter_with, parse_ensemble, BarycenterOptions, Normalization};
use bures_geom::divergence::{
    alpha_z_divergence, belavkin_staszewski, generalized_renyi, max_relative, umegaki, LogBase, RenyiKind,
};
use bures_geom::fidelity::{
    fidelity_at, generalized_bures_sq, generalized_fidelity, holevo, interior_fidelity, log_euclidean, matsumoto,
    polar_fidelity_parts, uhlmann, z_fidelity, BaseEnsemble, FidelityForm,
};
use bures_geom::linalg::{parse_hermitian, HermitianMatrix, PositiveMatrix};
use bures_geom::manifold::{geodesic_point, squared_distance, MetricKind};
use bures_geom::verify::{
    geodesic_samples, rebit_grid, run_suite, SuiteConfig, GEODESIC_IMAGINARY_TOL, GEODESIC_VARIATION_TOL,
};

use crate::output::{cell, complex, matrix, num, object, string};
use crate::{
    BarycenterArgs, CliError, ContourArgs, DistanceArgs, DistanceMetric, DivergenceArgs, DivergenceKind,
    FidelityArgs, FidelityKind, Form, GeodesicArgs, Metric, Pair, VerifyArgs,
};

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn hermitian(path: &Path) -> Result<HermitianMatrix> {
    Ok(parse_hermitian(&read(path)?)?)
}

fn positive(path: &Path) -> Result<PositiveMatrix> {
    Ok(PositiveMatrix::new(hermitian(path)?)?)
}

fn hermitian_pair(pair: &Pair) -> Result<(HermitianMatrix, HermitianMatrix)> {
    Ok((hermitian(&pair.p)?, hermitian(&pair.q)?))
}

fn positive_pair(pair: &Pair) -> Result<(PositiveMatrix, PositiveMatrix)> {
    Ok((positive(&pair.p)?, positive(&pair.q)?))
}

fn required<T: Copy>(value: Option<T>, flag: &str, what: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("{what} needs --{flag}")))
}

/// `I` (any case) or a JSON file.
fn base(arg: Option<&str>, d: usize, what: &str) -> Result<PositiveMatrix> {
    let arg = arg.ok_or_else(|| CliError::Usage(format!("{what} needs --base")))?;
    if arg.eq_ignore_ascii_case("i") || arg.eq_ignore_ascii_case("identity") {
        Ok(PositiveMatrix::identity(d))
    } else {
        positive(Path::new(arg))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn fidelity(a: &FidelityArgs) -> Result<()> {
    let (re, im) = match a.kind {
        FidelityKind::Uhlmann => {
            let (p, q) = hermitian_pair(&a.pair)?;
            (uhlmann(&p, &q)?, 0.0)
        }
        FidelityKind::Holevo => {
            let (p, q) = hermitian_pair(&a.pair)?;
            (holevo(&p, &q)?, 0.0)
        }
        FidelityKind::Z => {
            let z = required(a.z, "z", "the z-fidelity")?;
            let (p, q) = hermitian_pair(&a.pair)?;
            (z_fidelity(&p, &q, z)?, 0.0)
        }
        FidelityKind::Matsumoto => {
            let (p, q) = positive_pair(&a.pair)?;
            (matsumoto(&p, &q)?, 0.0)
        }
        FidelityKind::LogEuclidean => {
            let (p, q) = positive_pair(&a.pair)?;
            (log_euclidean(&p, &q)?, 0.0)
        }
        FidelityKind::Generalized => {
            let (p, q) = hermitian_pair(&a.pair)?;
            let r = base(a.base.as_deref(), p.dim(), "the generalized fidelity")?;
            let v = match a.form {
                None => fidelity_at(&p, &q, &r)?,
                Some(form) => {
                    let form = match form {
                        Form::Definition => FidelityForm::Definition,
                        Form::Polar => FidelityForm::PolarUnitary,
                        Form::Geometric => FidelityForm::GeometricMean,
                    };
                    generalized_fidelity(&p, &q, &r, form)?.complex()
                }
            };
            (v.re, v.im)
        }
        FidelityKind::Polar => {
            let x = required(a.x, "x", "the polar fidelity")?;
            let (p, q) = positive_pair(&a.pair)?;
            let (fp, fq) = polar_fidelity_parts(&p, &q, x)?;
            ((fp.re + fq.re) / 2.0, (fp.im + fq.im) / 2.0)
        }
        FidelityKind::Interior => {
            let path = a
                .bases
                .as_deref()
                .ok_or_else(|| CliError::Usage("the interior fidelity needs --bases".into()))?;
            let ensemble = parse_ensemble(&read(path)?)?;
            let bases = BaseEnsemble::new(ensemble.states().to_vec(), ensemble.weights().to_vec())?;
            let (p, q) = positive_pair(&a.pair)?;
            let v = interior_fidelity(&p, &q, &bases)?;
            (v.re, v.im)
        }
    };
    println!("{}", complex(re, im));
    Ok(())
}

fn metric(m: Metric) -> MetricKind {
    match m {
        Metric::Bw => MetricKind::BuresWasserstein,
        Metric::Ai => MetricKind::AffineInvariant,
        Metric::Euc => MetricKind::Euclidean,
    }
}

pub fn distance(a: &DistanceArgs) -> Result<()> {
    let squared = match a.metric {
        DistanceMetric::Generalized => {
            let (p, q) = hermitian_pair(&a.pair)?;
            let r = base(a.base.as_deref(), p.dim(), "the generalized distance")?;
            generalized_bures_sq(&p, &q, &r)?
        }
        m => {
            let m = match m {
                DistanceMetric::Bw => Metric::Bw,
                DistanceMetric::Ai => Metric::Ai,
                _ => Metric::Euc,
            };
            let (p, q) = positive_pair(&a.pair)?;
            squared_distance(metric(m), &p, &q)?
        }
    };
    println!(
        "{}",
        object(&[("squared", num(squared)), ("distance", num(squared.sqrt()))])
    );
    Ok(())
}

pub fn geodesic(a: &GeodesicArgs) -> Result<()> {
    let (p, q) = positive_pair(&a.pair)?;
    let point = geodesic_point(metric(a.metric), &p, &q, a.t)?;
    println!("{}", matrix(point.as_matrix()));
    Ok(())
}

pub fn barycenter(a: &BarycenterArgs) -> Result<()> {
    let ensemble = parse_ensemble(&read(&a.ensemble)?)?;
    let options = BarycenterOptions {
        tol: a.tol,
        max_iter: a.max_iter,
        normalization: if a.maximizer {
            Normalization::FidelityMaximizer
        } else {
            Normalization::Weighted
        },
    };
    let result = bw_barycenter_with(&ensemble, options)?;
    println!(
        "{}",
        object(&[
            ("sigma", matrix(result.sigma.as_matrix())),
            ("iterations", result.iterations.to_string()),
            ("residual", num(result.residual)),
            ("total_fidelity", num(result.total_fidelity)),
        ])
    );
    Ok(())
}

pub fn divergence(a: &DivergenceArgs) -> Result<()> {
    let (p, q) = positive_pair(&a.pair)?;
    let alpha = || required(a.alpha, "alpha", "this divergence");
    let bits = match a.kind {
        DivergenceKind::Petz => RenyiKind::Petz.divergence(&p, &q, alpha()?)?,
        DivergenceKind::Sandwich => RenyiKind::Sandwich.divergence(&p, &q, alpha()?)?,
        DivergenceKind::ReverseSandwich => RenyiKind::ReverseSandwich.divergence(&p, &q, alpha()?)?,
        DivergenceKind::Geometric => RenyiKind::Geometric.divergence(&p, &q, alpha()?)?,
        DivergenceKind::AlphaZ => {
            let z = required(a.z, "z", "the alpha-z divergence")?;
            alpha_z_divergence(&p, &q, alpha()?, z)?
        }
        DivergenceKind::Generalized => {
            let r = base(a.base.as_deref(), p.dim(), "the generalized divergence")?;
            generalized_renyi(&p, &q, &r, alpha()?)?
        }
        DivergenceKind::Umegaki => umegaki(&p, &q)?,
        DivergenceKind::BelavkinStaszewski => belavkin_staszewski(&p, &q)?,
        DivergenceKind::MaxRelative => max_relative(&p, &q)?,
    };
    let unit = if a.nats { LogBase::Nats } else { LogBase::Bits };
    let label = if a.nats { "nats" } else { "bits" };
    println!(
        "{}",
        object(&[("value", num(unit.from_bits(bits))), ("unit", string(label))])
    );
    Ok(())
}

pub fn verify(a: &VerifyArgs) -> Result<()> {
    let config = SuiteConfig {
        dims: a.dims.clone(),
        trials: a.trials,
        seed: a.seed,
        tol: a.tol,
        cond_cap: a.cond_cap,
    };
    config.validate()?;
    let report = run_suite(&config);
    if let Some(out) = &a.out {
        let mut w = create(out)?;
        w.write_all(report.to_json().as_bytes())
            .and_then(|_| w.flush())
            .map_err(|e| CliError::Io(out.clone(), e))?;
    }
    for c in report.failed_checks() {
        let at = c.worst.map(|t| format!(" at d={} trial={}", t.d, t.trial)).unwrap_or_default();
        println!(
            "FAIL {}: {} of {} trials, max residual {:e} > {:e}{at}",
            c.name, c.failures, c.trials, c.max_residual, c.tolerance
        );
        if let Some(e) = &c.first_error {
            println!("     {e}");
        }
    }
    for w in report.witnesses.iter().filter(|w| !w.passed) {
        println!("FAIL witness {}: margin {:e}", w.name, w.margin);
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", report.checks.len());
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Check("verification failed".into()))
    }
}

fn geodesic_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.geodesic.csv"))
}

fn write_csv(path: &Path, header: &str, rows: impl Iterator<Item = String>) -> Result<()> {
    let io = |e| CliError::Io(path.to_path_buf(), e);
    let mut w = create(path)?;
    writeln!(w, "{header}").map_err(io)?;
    for row in rows {
        writeln!(w, "{row}").map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn rebit_contour(a: &ContourArgs) -> Result<()> {
    let (p, q) = match (a.witness, &a.p, &a.q) {
        (Some(w), _, _) => {
            let (p, q) = w.states();
            (p.hermitian().clone(), q.hermitian().clone())
        }
        (None, Some(p), Some(q)) => (hermitian(p)?, hermitian(q)?),
        _ => return Err(CliError::Usage("rebit-contour needs P and Q files or --witness".into())),
    };
    let grid = rebit_grid(&p, &q, a.resolution, a.margin)?;
    let (pp, qp) = (PositiveMatrix::new(p)?, PositiveMatrix::new(q)?);
    let samples = geodesic_samples(&pp, &qp)?;
    let reference = uhlmann(&pp, &qp)?;

    write_csv(
        &a.out,
        "x,z,re_F,im_F",
        grid.points.iter().map(|pt| {
            format!("{},{},{},{}", cell(pt.x), cell(pt.z), cell(pt.value.re), cell(pt.value.im))
        }),
    )?;
    let geo_out = a.geodesic_out.clone().unwrap_or_else(|| geodesic_path(&a.out));
    write_csv(
        &geo_out,
        "t,x,z,re_F,im_F",
        samples.iter().map(|s| {
            format!(
                "{},{},{},{},{}",
                cell(s.t),
                cell(s.x),
                cell(s.z),
                cell(s.value.re),
                cell(s.value.im)
            )
        }),
    )?;

    let deviation = samples.iter().map(|s| (s.value.re - reference).abs()).fold(0.0, f64::max);
    let imaginary = samples.iter().map(|s| s.value.im.abs()).fold(0.0, f64::max);
    let min_re = grid.points.iter().map(|pt| pt.value.re).fold(f64::INFINITY, f64::min);
    let max_re = grid.points.iter().map(|pt| pt.value.re).fold(f64::NEG_INFINITY, f64::max);
    println!(
        "{}",
        object(&[
            ("points", grid.points.len().to_string()),
            ("min_re", num(min_re)),
            ("max_re", num(max_re)),
            ("uhlmann", num(reference)),
            ("geodesic_max_deviation", num(deviation)),
            ("geodesic_max_imaginary", num(imaginary)),
            ("grid", string(&a.out.display().to_string())),
            ("geodesic", string(&geo_out.display().to_string())),
        ])
    );
    if deviation > GEODESIC_VARIATION_TOL || imaginary > GEODESIC_IMAGINARY_TOL {
        return Err(CliError::Check(format!(
            "F_R along the geodesic leaves the Uhlmann value: deviation {deviation:e}, imaginary part {imaginary:e}"
        )));
    }
    Ok(())
}
