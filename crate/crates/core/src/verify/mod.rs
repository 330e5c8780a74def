//! Numerical verification of the identities satisfied by `F_R(P,Q)`.
//!
//! * [`paths`]: the eleven base paths and their invariance, covariance and
//!   anchor properties.
//! * [`block`]: the block-matrix optimum `X⋆`, purifications and the
//!   determinant of the unitary factor.
//! * [`witness`]: rebit bases, stored existence witnesses and the
//!   monotonicity scan.
//! * [`suite`]: the seeded randomized suite aggregating all of the above.

pub mod block;
pub mod paths;
pub mod suite;
pub mod witness;

pub use block::{
    build_block_system, check_block, check_purification, check_su_d, extract_from_block, purification,
    BlockCheck, BlockExtraction, BlockSystem, PurificationCheck, PurificationVector,
};
pub use paths::{check_path, path_base, PathExpectation, PathId, PathReport, PathSample, Verdict};
pub use suite::{
    check_names, gamma_commuting_triple, run_suite, with_thread_cap, CheckReport, SuiteConfig, SuiteReport,
    THREADS_ENV,
};
pub use witness::{
    fig1_witnesses, geodesic_samples, monotonicity_scan, rebit, rebit_coordinates, rebit_grid, Fig1Witness,
    GeodesicSample, MonotonicityReport, RebitGrid, RebitPoint, WitnessPair, DISK_MARGIN, GEODESIC_IMAGINARY_TOL,
    GEODESIC_VARIATION_TOL, MIN_RESOLUTION,
};
