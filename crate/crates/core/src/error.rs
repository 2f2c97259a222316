//! Crate error type.

use core::fmt;

/// Validation and combination failures.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Entry buffer does not match the declared shape, or a dimension is zero.
    BadShape { rows: usize, cols: usize, len: usize },
    /// Non-finite entry encountered.
    NonFinite,
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Shapes incompatible for the requested operation.
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    /// Hilbert-space dimensions incompatible.
    DimensionMismatch { expected: usize, found: usize },
    /// Matrix deviates from its conjugate transpose beyond tolerance.
    NotHermitian { deviation: f64 },
    /// Eigenvalue below the positive-semidefinite floor.
    NotPositive { eigenvalue: f64 },
    /// Positive-definite operation hit a non-positive eigenvalue.
    Singular { eigenvalue: f64 },
    /// State trace differs from one.
    TraceNotOne { trace: f64 },
    /// A channel needs at least one Kraus operator.
    EmptyKraus,
    /// Kraus operators do not satisfy Σ K†K = I.
    NotTracePreserving { deviation: f64 },
    /// Too few Kraus slots to carry a trace-preserving map.
    KrausRankDeficient { needed: usize, available: usize },
    /// Channel is not unital, so its adjoint leaves the category.
    NotUnital { deviation: f64 },
    /// Measurement effect outside [0, I].
    EffectOutOfRange { eigenvalue: f64 },
    /// Quasi-POVM effects do not sum to the identity.
    EffectSumNotIdentity { deviation: f64 },
    /// Effect trace too small to normalize.
    ZeroTraceEffect { index: usize },
    /// Fiducial vector is not normalized.
    FiducialNotNormalized { norm: f64 },
    /// Weyl-Heisenberg orbit misses the symmetric overlap condition.
    NotSic { worst_deviation: f64 },
    /// Trivial-family weights do not sum to one.
    WeightSum { sum: f64 },
    /// Random generation exhausted its retry budget.
    GenerationFailed { retries: usize },
    /// Operation requires a minimal informationally complete family.
    NotMinimal,
    /// Morphisms tagged with different POVM families cannot be combined.
    PovmMismatch,
    /// Quasi-probability entries do not sum to one.
    SumNotOne { sum: f64 },
    /// Vector length does not match.
    LengthMismatch { expected: usize, found: usize },
    /// State map failed the affinity spot check.
    NotAffine { deviation: f64 },
    /// No POVM registered for this dimension.
    MissingDimension { dim: usize },
    /// Orbit-span seed matrices must contain the identity.
    IdentitySeedMissing,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadShape { rows, cols, len } => {
                write!(f, "{len} entries do not fill a {rows}x{cols} matrix")
            }
            Error::NonFinite => write!(f, "matrix entries must be finite"),
            Error::NotSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            Error::ShapeMismatch { left, right } => write!(
                f,
                "incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (deviation {deviation:.3e})")
            }
            Error::NotPositive { eigenvalue } => {
                write!(f, "matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")
            }
            Error::Singular { eigenvalue } => {
                write!(f, "matrix is numerically singular (eigenvalue {eigenvalue:.3e})")
            }
            Error::TraceNotOne { trace } => write!(f, "trace is {trace}, expected 1"),
            Error::EmptyKraus => write!(f, "a channel needs at least one Kraus operator"),
            Error::NotTracePreserving { deviation } => {
                write!(f, "Kraus operators are not trace preserving (deviation {deviation:.3e})")
            }
            Error::KrausRankDeficient { needed, available } => write!(
                f,
                "trace preservation needs rank {needed}, Kraus slots provide {available}"
            ),
            Error::NotUnital { deviation } => {
                write!(f, "channel is not unital (deviation {deviation:.3e}); adjoint undefined")
            }
            Error::EffectOutOfRange { eigenvalue } => {
                write!(f, "measurement effect outside [0, I] (eigenvalue {eigenvalue:.6})")
            }
            Error::EffectSumNotIdentity { deviation } => {
                write!(f, "effects do not sum to the identity (deviation {deviation:.3e})")
            }
            Error::ZeroTraceEffect { index } => {
                write!(f, "effect {index} has (near-)zero trace and cannot be normalized")
            }
            Error::FiducialNotNormalized { norm } => {
                write!(f, "fiducial vector has norm {norm}, expected 1")
            }
            Error::NotSic { worst_deviation } => write!(
                f,
                "orbit is not symmetric informationally complete (worst overlap deviation {worst_deviation:.3e})"
            ),
            Error::WeightSum { sum } => write!(f, "weights sum to {sum}, expected 1"),
            Error::GenerationFailed { retries } => {
                write!(f, "random generation failed after {retries} retries")
            }
            Error::NotMinimal => {
                write!(f, "operation requires a minimal informationally complete family")
            }
            Error::PovmMismatch => {
                write!(f, "POVM identities do not match; refusing to mix families")
            }
            Error::SumNotOne { sum } => {
                write!(f, "quasi-probability entries sum to {sum}, expected 1")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::NotAffine { deviation } => {
                write!(f, "state map failed the affinity spot check (deviation {deviation:.3e})")
            }
            Error::MissingDimension { dim } => {
                write!(f, "no POVM registered for dimension {dim}")
            }
            Error::IdentitySeedMissing => {
                write!(f, "orbit-span seed matrices must contain the identity")
            }
        }
    }
}

impl core::error::Error for Error {}
