//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A coefficient entry and its transpose partner disagree beyond the
    /// assembly tolerance. `(p, q)` identify the inner-product powers of the
    /// offending coefficient, `(j, k)` the basis labels.
    #[error("non-Hermitian model output for powers (p={p}, q={q}) at labels (j={j}, k={k}): defect {defect:.3e}")]
    NonHermitianEntry { p: u8, q: u8, j: i64, k: i64, defect: f64 },

    /// The Gram matrix is singular or indefinite, so the basis is degenerate.
    #[error("degenerate basis: Gram matrix has minimum eigenvalue {min_eigenvalue:.3e}")]
    DegenerateBasis { min_eigenvalue: f64 },

    /// A basis flagged orthonormal produced a Gram matrix that is not the identity.
    #[error("basis flagged orthonormal but Gram matrix deviates from identity by {defect:.3e}")]
    GramNotIdentity { defect: f64 },

    /// The zeroth coefficient must be positive semidefinite.
    #[error("coefficient A0 is not positive semidefinite: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("basis labels must be nonempty and distinct (duplicate label {label})")]
    DuplicateBasisLabel { label: i64 },

    #[error("basis label list is empty")]
    EmptyBasis,

    #[error("inner-product powers must lie in {{0, 1}}, got (p={p}, q={q})")]
    InvalidPower { p: u8, q: u8 },

    #[error("label {label} is outside the model's index set")]
    UnknownLabel { label: i64 },

    #[error("coefficient matrices must be square with a common dimension, got {rows}x{cols} against n={n}")]
    DimensionMismatch { n: usize, rows: usize, cols: usize },

    #[error("quadrature did not reach tolerance {requested:.3e} within the subdivision budget (achieved {achieved:.3e})")]
    QuadratureDidNotConverge { requested: f64, achieved: f64 },

    #[error("quadrature tolerance must be positive, got {tolerance:.3e}")]
    InvalidTolerance { tolerance: f64 },

    #[error("eigensolver failed to converge on the {dim}x{dim} companion matrix after {max_iterations} iterations")]
    EigensolverFailed { dim: usize, max_iterations: usize },

    /// Root residuals exceeded the certification tolerance. Each offender is
    /// reported as `(root, scaled residual)`.
    #[error("residual certification failed at tolerance {tolerance:.3e} for {} root(s): {offenders:?}", offenders.len())]
    CertificationFailed { tolerance: f64, offenders: Vec<(Complex64, f64)> },

    #[error("root multiset is not closed under conjugation: no partner for {root} within {tolerance:.3e}")]
    ConjugatePairingFailed { root: Complex64, tolerance: f64 },

    #[error("basis constant must be positive, got beta={beta}")]
    NonpositiveBeta { beta: f64 },

    #[error("perturbation bounds must be nonnegative, got epsilon={epsilon}")]
    NegativeEpsilon { epsilon: f64 },

    #[error("spectrum description lists no points")]
    EmptySpectrum,

    #[error("grid region is degenerate: [{re_min}, {re_max}] x [{im_min}, {im_max}]")]
    InvalidRegion { re_min: f64, re_max: f64, im_min: f64, im_max: f64 },

    #[error("grid resolution must be at least 2x2, got {n_re}x{n_im}")]
    InvalidResolution { n_re: usize, n_im: usize },

    #[error("annulus radii must satisfy 0 < inner < outer, got inner={inner}, outer={outer}")]
    InvalidAnnulus { inner: f64, outer: f64 },

    #[error("norm certification failed: computed {computed:.15e}, expected {expected:.15e}")]
    NormCertificationFailed { computed: f64, expected: f64 },

    #[error("log-log fit needs at least 3 positive samples of equal length: {reason}")]
    InvalidSlopeData { reason: String },

    #[error("Monte Carlo sample failed at n={n}, mode={mode}, seed={seed}: {source}")]
    MonteCarlo { n: usize, mode: &'static str, seed: u64, #[source] source: Box<Error> },

    #[error("pencil deserialization failed: {0}")]
    Deserialization(String),
}
