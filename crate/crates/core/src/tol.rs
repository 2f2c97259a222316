//! Numerical tolerances used for validation and diagnosis.
//!
//! All tolerances are absolute on the max-entry norm: every matrix handled by
//! this crate has entries of order at most one after normalization, so a single
//! absolute scale is meaningful throughout.

/// Max deviation from the conjugate transpose for a matrix to count as Hermitian.
pub const HERM: f64 = 1e-10;
/// Eigenvalue floor for positive-semidefinite checks.
pub const PD: f64 = 1e-10;
/// Allowed deviation of a state trace from one.
pub const TRACE_ONE: f64 = 1e-10;
/// Allowed deviation of Σ Kᵢ†Kᵢ from the identity (trace preservation).
pub const TRACE_PRESERVING: f64 = 1e-9;
/// Allowed deviation of Σ KᵢKᵢ† from the identity (unitality gate for adjoints).
pub const UNITAL: f64 = 1e-9;
/// Allowed deviation of a (quasi-)POVM effect sum from the identity.
pub const EFFECT_SUM: f64 = 1e-10;
/// Column sums of quasi-stochastic matrices and quasi-probability vectors.
pub const COLUMN_SUM: f64 = 1e-10;
/// Max spread between effect traces for an equal-trace family.
pub const EQUAL_TRACE: f64 = 1e-10;
/// Smallest Gram singular value that still counts as linearly independent.
pub const GRAM_RANK: f64 = 1e-8;
/// Default relative singular-value cutoff for pseudo-inverses.
pub const PINV_REL: f64 = 1e-10;
/// Effects with |trace| at or below this cannot be trace-normalized.
pub const EFFECT_TRACE_MIN: f64 = 1e-12;
/// Worst pairwise overlap deviation accepted by the Weyl-Heisenberg SIC builder.
pub const SIC_OVERLAP: f64 = 1e-9;
/// Residual gate for fitting the `αI + βJ` transition-matrix form.
pub const SIC_FORM: f64 = 1e-9;
/// Trivial-family weights must sum to one within this.
pub const WEIGHT_SUM: f64 = 1e-12;
/// Effect-sum and affinity tolerance for quasi-POVM extraction.
pub const EXTRACT: f64 = 1e-8;
/// Effects closer than this to a multiple of the identity count as trivial.
pub const TRIVIAL_EFFECT: f64 = 1e-9;
/// Default tolerance for single-composition law checks.
pub const LAW: f64 = 1e-9;
/// Relaxed tolerance for triple-tensor coherence, where the conditioning of
/// random dimension-eight families dominates.
pub const LAW_COHERENCE: f64 = 1e-8;
