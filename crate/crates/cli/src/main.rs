//! `bures-geom`: fidelities, distances, geodesics, barycenters, divergences and
//! verification runs on JSON matrix inputs.
//!
//! Exit codes: 0 success, 1 check failure, 2 I/O or parse error, 3 dimension
//! mismatch, 4 positivity or domain error, 5 non-convergence.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bures_geom::verify::{with_thread_cap, WitnessPair};
use bures_geom::Error;

#[derive(Parser)]
#[command(name = "bures-geom", version, about = "Generalized fidelity and Bures-Wasserstein geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Named, base-dependent, polar or interior fidelity of two matrices.
    Fidelity(FidelityArgs),
    /// Squared and plain distance under a metric or a base.
    Distance(DistanceArgs),
    /// Point on the geodesic from P (t = 0) to Q (t = 1).
    Geodesic(GeodesicArgs),
    /// Bures-Wasserstein barycenter of an ensemble.
    Barycenter(BarycenterArgs),
    /// Quantum Renyi divergences and relative entropies.
    Divergence(DivergenceArgs),
    /// Seeded randomized verification suite.
    Verify(VerifyArgs),
    /// F_R(P,Q) over rebit bases R, written as CSV.
    RebitContour(ContourArgs),
}

#[derive(Args)]
pub struct Pair {
    /// JSON file holding P.
    pub p: PathBuf,
    /// JSON file holding Q.
    pub q: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FidelityKind {
    Uhlmann,
    Holevo,
    Matsumoto,
    LogEuclidean,
    Z,
    Generalized,
    Polar,
    Interior,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Form {
    Definition,
    Polar,
    Geometric,
}

#[derive(Args)]
pub struct FidelityArgs {
    #[command(flatten)]
    pub pair: Pair,
    #[arg(long, value_enum)]
    pub kind: FidelityKind,
    /// Base R for `generalized`: a JSON file or `I`.
    #[arg(long)]
    pub base: Option<String>,
    /// Formula for `generalized`; defaults to the most accurate one available.
    #[arg(long, value_enum)]
    pub form: Option<Form>,
    /// Exponent for `z`.
    #[arg(long)]
    pub z: Option<f64>,
    /// Exponent for `polar`.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Base ensemble for `interior`: `{"weights": [...], "states": [...]}`.
    #[arg(long)]
    pub bases: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DistanceMetric {
    Bw,
    Ai,
    Euc,
    Generalized,
}

#[derive(Args)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub pair: Pair,
    #[arg(long, value_enum, default_value = "bw")]
    pub metric: DistanceMetric,
    /// Base R for `generalized`: a JSON file or `I`.
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Metric {
    Bw,
    Ai,
    Euc,
}

#[derive(Args)]
pub struct GeodesicArgs {
    #[command(flatten)]
    pub pair: Pair,
    #[arg(long, value_enum, default_value = "bw")]
    pub metric: Metric,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
}

#[derive(Args)]
pub struct BarycenterArgs {
    /// Ensemble JSON: `{"weights": [...], "states": [...]}`; weights default to uniform.
    pub ensemble: PathBuf,
    #[arg(long, default_value_t = bures_geom::barycenter::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = bures_geom::barycenter::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Uniform weights with unit-trace normalization: the total-fidelity maximizer.
    #[arg(long)]
    pub maximizer: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DivergenceKind {
    Petz,
    Sandwich,
    ReverseSandwich,
    Geometric,
    AlphaZ,
    Generalized,
    Umegaki,
    BelavkinStaszewski,
    MaxRelative,
}

#[derive(Args)]
pub struct DivergenceArgs {
    #[command(flatten)]
    pub pair: Pair,
    #[arg(long, value_enum)]
    pub kind: DivergenceKind,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Second parameter of `alpha-z`.
    #[arg(long)]
    pub z: Option<f64>,
    /// Base R for `generalized`: a JSON file or `I`.
    #[arg(long)]
    pub base: Option<String>,
    /// Report in nats instead of bits.
    #[arg(long)]
    pub nats: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 6, 8])]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e6)]
    pub cond_cap: f64,
    /// Where to write the JSON report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ContourArgs {
    /// JSON file holding P (omit with --witness).
    pub p: Option<PathBuf>,
    /// JSON file holding Q (omit with --witness).
    pub q: Option<PathBuf>,
    /// Use a stored pair instead of input files.
    #[arg(long, value_parser = parse_witness, conflicts_with_all = ["p", "q"])]
    pub witness: Option<WitnessPair>,
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    #[arg(long, default_value_t = bures_geom::verify::DISK_MARGIN)]
    pub margin: f64,
    /// Grid CSV `x,z,re_F,im_F`.
    #[arg(long)]
    pub out: PathBuf,
    /// Geodesic CSV `t,x,z,re_F,im_F`; defaults to `<out stem>.geodesic.csv`.
    #[arg(long)]
    pub geodesic_out: Option<PathBuf>,
}

fn parse_witness(s: &str) -> Result<WitnessPair, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    Check(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Io(..) | CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                Error::Parse(_) | Error::InvalidArgument(_) => 2,
                Error::DimensionMismatch { .. } | Error::NotSquare { .. } | Error::NotRebit(_) => 3,
                Error::NotHermitian { .. }
                | Error::NotPositive { .. }
                | Error::Singular { .. }
                | Error::NotUnitary { .. }
                | Error::Domain { .. } => 4,
                Error::NonConvergence { .. } => 5,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fidelity(a) => commands::fidelity(&a),
        Command::Distance(a) => commands::distance(&a),
        Command::Geodesic(a) => commands::geodesic(&a),
        Command::Barycenter(a) => commands::barycenter(&a),
        Command::Divergence(a) => commands::divergence(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::RebitContour(a) => commands::rebit_contour(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match with_thread_cap(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bures-geom: {e}");
            ExitCode::from(e.code())
        }
    }
}
