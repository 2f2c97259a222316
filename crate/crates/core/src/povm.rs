//! Quasi-POVM families and the constructors that induce representations.
//!
//! A quasi-POVM is an ordered family of Hermitian matrices summing to the
//! identity; positivity is optional. Construction computes and caches the
//! structural flags (positivity, informational completeness, minimality,
//! equal traces, generalized-SIC symmetry) together with a content hash that
//! tags every representation derived from the family.

use alloc::vec::Vec;

use num_complex::Complex64;
// Under test builds std is linked and the inherent f64 methods shadow the
// trait; the import is only "unused" there.
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::matrix::{eig_hermitian, hs_inner, ComplexMatrix, RealMatrix, sqrt_inv_psd};
use crate::quantum::random_pure_vector_rng;
use crate::seeding::{rng_from_seed, trial_seed};
use crate::tol;
use crate::Result;

/// Content hash of an effect list; equal families get equal identifiers, so
/// files and in-memory values compose safely.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PovmId([u8; 32]);

impl PovmId {
    fn from_effects(dim: usize, effects: &[ComplexMatrix]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(b"qstoch-povm-v1");
        hasher.update((dim as u64).to_le_bytes());
        hasher.update((effects.len() as u64).to_le_bytes());
        for e in effects {
            hasher.update((e.rows() as u64).to_le_bytes());
            hasher.update((e.cols() as u64).to_le_bytes());
            for z in e.entries() {
                hasher.update(z.re.to_bits().to_le_bytes());
                hasher.update(z.im.to_bits().to_le_bytes());
            }
        }
        PovmId(hasher.finalize().into())
    }

    pub fn to_hex(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::with_capacity(64);
        for b in self.0 {
            let _ = write!(s, "{b:02x}");
        }
        s
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() != 64 {
            return None;
        }
        let mut bytes = [0u8; 32];
        for (i, chunk) in s.as_bytes().chunks(2).enumerate() {
            let hi = (chunk[0] as char).to_digit(16)?;
            let lo = (chunk[1] as char).to_digit(16)?;
            bytes[i] = ((hi << 4) | lo) as u8;
        }
        Some(PovmId(bytes))
    }
}

impl core::fmt::Debug for PovmId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "PovmId({}…)", &self.to_hex()[..8])
    }
}

impl core::fmt::Display for PovmId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Structural diagnoses of a quasi-POVM, computed at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct PovmFlags {
    /// All effect eigenvalues at least `-tol::PD`.
    pub positive: bool,
    /// Effects span the full Hermitian operator space.
    pub informationally_complete: bool,
    /// Exactly `dim²` linearly independent effects.
    pub minimal: bool,
    /// All effect traces agree within `tol::EQUAL_TRACE`.
    pub equal_trace: bool,
    /// `tr(E_i E_j) = α δ_ij + β` within `tol::SIC_FORM`, for minimal families;
    /// carries the fitted `(α, β)`.
    pub generalized_sic: Option<(f64, f64)>,
}

/// Ordered family of Hermitian matrices summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiPovm {
    dim: usize,
    effects: Vec<ComplexMatrix>,
    traces: Vec<f64>,
    gram: RealMatrix,
    gram_rank: usize,
    flags: PovmFlags,
    id: PovmId,
}

impl QuasiPovm {
    /// Validates the family and computes its flags. Rejects non-Hermitian
    /// effects and effect sums away from the identity.
    pub fn new(dim: usize, effects: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new_with_sum_tol(dim, effects, tol::EFFECT_SUM)
    }

    /// Same as [`QuasiPovm::new`] with a caller-chosen tolerance on the
    /// effect sum; quasi-POVM extraction works at `tol::EXTRACT`.
    pub(crate) fn new_with_sum_tol(
        dim: usize,
        effects: Vec<ComplexMatrix>,
        sum_tol: f64,
    ) -> Result<Self> {
        if dim == 0 || effects.is_empty() {
            return Err(Error::BadShape { rows: dim, cols: dim, len: effects.len() });
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &effects {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.rows() });
            }
            let deviation = e.hermitian_deviation();
            if deviation > tol::HERM {
                return Err(Error::NotHermitian { deviation });
            }
            sum = sum.add(e)?;
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > sum_tol {
            return Err(Error::EffectSumNotIdentity { deviation });
        }

        let traces: Vec<f64> = effects.iter().map(|e| e.trace().re).collect();

        let mut positive = true;
        for e in &effects {
            let dec = eig_hermitian(e)?;
            if dec.min_eigenvalue() < -tol::PD {
                positive = false;
                break;
            }
        }

        let count = effects.len();
        let gram = RealMatrix::from_fn(count, count, |i, j| {
            hs_inner(&effects[i], &effects[j]).expect("same shape").re
        });
        let singular = gram.singular_values();
        let gram_rank = singular.iter().filter(|&&s| s > tol::GRAM_RANK).count();
        let smallest = singular.iter().cloned().fold(f64::INFINITY, f64::min);
        let minimal = count == dim * dim && smallest > tol::GRAM_RANK;
        let informationally_complete = gram_rank == dim * dim;

        let (lo, hi) = traces
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| (lo.min(t), hi.max(t)));
        let equal_trace = hi - lo <= tol::EQUAL_TRACE;

        let generalized_sic = if minimal { fit_symmetric_gram(&gram) } else { None };

        let id = PovmId::from_effects(dim, &effects);
        Ok(Self {
            dim,
            effects,
            traces,
            gram,
            gram_rank,
            flags: PovmFlags {
                positive,
                informationally_complete,
                minimal,
                equal_trace,
                generalized_sic,
            },
            id,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of effects; `dim²` for minimal families.
    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    pub fn effect(&self, i: usize) -> &ComplexMatrix {
        &self.effects[i]
    }

    pub fn traces(&self) -> &[f64] {
        &self.traces
    }

    pub fn flags(&self) -> &PovmFlags {
        &self.flags
    }

    pub fn id(&self) -> PovmId {
        self.id
    }

    /// Gram matrix `tr(E_i E_j)`.
    pub fn gram(&self) -> &RealMatrix {
        &self.gram
    }

    /// Numerical rank of the effect span.
    pub fn gram_rank(&self) -> usize {
        self.gram_rank
    }

    /// Trace-normalized effect `E_i / tr(E_i)`.
    pub fn normalized_effect(&self, i: usize) -> Result<ComplexMatrix> {
        let t = self.traces[i];
        if t.abs() <= tol::EFFECT_TRACE_MIN {
            return Err(Error::ZeroTraceEffect { index: i });
        }
        Ok(self.effects[i].scale_re(1.0 / t))
    }
}

// Fits tr(E_i E_j) = α δ_ij + β; β from the off-diagonal mean, α from the
// diagonal mean minus β. Means damp rounding noise in individual entries.
fn fit_symmetric_gram(gram: &RealMatrix) -> Option<(f64, f64)> {
    let n = gram.rows();
    if n < 2 {
        return Some((gram.get(0, 0), 0.0));
    }
    let mut diag = 0.0;
    let mut off = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                diag += gram.get(i, j);
            } else {
                off += gram.get(i, j);
            }
        }
    }
    let beta = off / (n * n - n) as f64;
    let alpha = diag / n as f64 - beta;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let model = if i == j { alpha + beta } else { beta };
            worst = worst.max((gram.get(i, j) - model).abs());
        }
    }
    (worst < tol::SIC_FORM).then_some((alpha, beta))
}

/// The unique POVM `{1}` on the one-dimensional algebra.
pub fn unit_povm() -> QuasiPovm {
    QuasiPovm::new(1, alloc::vec![ComplexMatrix::identity(1)]).expect("valid by construction")
}

/// Computational-basis projectors `{|k⟩⟨k|}`; the classical target family for
/// measurement representations.
pub fn computational_povm(outcomes: usize) -> QuasiPovm {
    let effects = (0..outcomes)
        .map(|k| {
            let mut p = ComplexMatrix::zeros(outcomes, outcomes);
            p.set(k, k, Complex64::ONE);
            p
        })
        .collect();
    QuasiPovm::new(outcomes, effects).expect("valid by construction")
}

/// The qubit SIC: effects `(I + a_i·σ)/4` over the tetrahedron directions
/// `(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)` scaled by `1/√3`.
pub fn tetrahedron_povm() -> QuasiPovm {
    let s = 1.0 / 3.0f64.sqrt();
    let dirs = [
        [s, s, s],
        [s, -s, -s],
        [-s, s, -s],
        [-s, -s, s],
    ];
    let effects = dirs
        .iter()
        .map(|&[x, y, z]| {
            ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => Complex64::new(1.0 + z, 0.0),
                (0, 1) => Complex64::new(x, -y),
                (1, 0) => Complex64::new(x, y),
                _ => Complex64::new(1.0 - z, 0.0),
            })
            .scale_re(0.25)
        })
        .collect();
    QuasiPovm::new(2, effects).expect("valid by construction")
}

/// Fiducial vector whose Weyl-Heisenberg orbit reproduces the tetrahedron SIC
/// (Bloch vector `(1,1,1)/√3`).
pub fn qubit_fiducial() -> Vec<Complex64> {
    let t = 1.0 / 3.0f64.sqrt();
    let c = ((1.0 + t) / 2.0).sqrt();
    let s = ((1.0 - t) / 2.0).sqrt();
    let phase = Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_4);
    alloc::vec![Complex64::new(c, 0.0), phase * s]
}

/// The exact qutrit fiducial `(0, 1, -1)/√2`.
pub fn qutrit_fiducial() -> Vec<Complex64> {
    let s = 1.0 / 2.0f64.sqrt();
    alloc::vec![
        Complex64::ZERO,
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
    ]
}

/// SIC-POVM from the Weyl-Heisenberg orbit of a fiducial vector: effects
/// `(1/d) |ψ_jk⟩⟨ψ_jk|` with `ψ_jk = X^j Z^k ψ` over the clock-and-shift pair.
///
/// The symmetric overlap condition `|⟨ψ_a|ψ_b⟩|² = 1/(d+1)` is validated for
/// all distinct pairs; a fiducial that misses it is rejected with the worst
/// deviation in the error.
pub fn wh_sic(dim: usize, fiducial: &[Complex64]) -> Result<QuasiPovm> {
    if fiducial.len() != dim || dim == 0 {
        return Err(Error::DimensionMismatch { expected: dim, found: fiducial.len() });
    }
    let norm: f64 = fiducial.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::FiducialNotNormalized { norm });
    }

    let mut states: Vec<Vec<Complex64>> = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        for k in 0..dim {
            // (X^j Z^k ψ)_m = ω^{k·l} ψ_l with l = (m - j) mod d
            let mut v = Vec::with_capacity(dim);
            for m in 0..dim {
                let l = (m + dim - (j % dim)) % dim;
                let phase = 2.0 * core::f64::consts::PI * ((k * l) % dim) as f64 / dim as f64;
                v.push(Complex64::from_polar(1.0, phase) * fiducial[l]);
            }
            states.push(v);
        }
    }

    let target = 1.0 / (dim as f64 + 1.0);
    let mut worst = 0.0f64;
    for a in 0..states.len() {
        for b in (a + 1)..states.len() {
            let overlap: Complex64 = states[a]
                .iter()
                .zip(&states[b])
                .map(|(x, y)| x.conj() * y)
                .sum();
            worst = worst.max((overlap.norm_sqr() - target).abs());
        }
    }
    if worst > tol::SIC_OVERLAP {
        return Err(Error::NotSic { worst_deviation: worst });
    }

    let effects = states
        .iter()
        .map(|v| ComplexMatrix::outer(v).scale_re(1.0 / dim as f64))
        .collect();
    QuasiPovm::new(dim, effects)
}

const RANDOM_IC_RETRIES: usize = 32;

/// Random minimal IC-POVM: `dim²` Haar-random rank-one effects symmetrized by
/// `S^{-1/2} (·) S^{-1/2}` so they sum to the identity exactly. Resamples
/// (bounded retries) until the family is minimal. Deterministic in the seed.
pub fn random_minimal_ic(dim: usize, seed: u64) -> Result<QuasiPovm> {
    if dim == 0 {
        return Err(Error::BadShape { rows: 0, cols: 0, len: 0 });
    }
    for attempt in 0..RANDOM_IC_RETRIES {
        let mut rng = rng_from_seed(trial_seed(seed, attempt as u64));
        let projectors: Vec<ComplexMatrix> = (0..dim * dim)
            .map(|_| ComplexMatrix::outer(&random_pure_vector_rng(dim, &mut rng)))
            .collect();
        let mut total = ComplexMatrix::zeros(dim, dim);
        for p in &projectors {
            total = total.add(p)?;
        }
        let whitener = match sqrt_inv_psd(&total) {
            Ok(w) => w,
            Err(_) => continue,
        };
        let effects: Result<Vec<ComplexMatrix>> = projectors
            .iter()
            .map(|p| {
                let e = whitener.matmul(p)?.matmul(&whitener)?;
                // symmetrize away rounding in the congruence
                e.add(&e.adjoint()).map(|x| x.scale_re(0.5))
            })
            .collect();
        let povm = QuasiPovm::new(dim, effects?)?;
        if povm.flags().minimal {
            return Ok(povm);
        }
    }
    Err(Error::GenerationFailed { retries: RANDOM_IC_RETRIES })
}

/// Trivial quasi-POVM `{w_i I}`; weights must sum to one.
pub fn trivial_quasi_povm(dim: usize, weights: &[f64]) -> Result<QuasiPovm> {
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > tol::WEIGHT_SUM {
        return Err(Error::WeightSum { sum });
    }
    let effects = weights
        .iter()
        .map(|&w| ComplexMatrix::identity(dim).scale_re(w))
        .collect();
    QuasiPovm::new(dim, effects)
}

/// Generalized Gell-Mann basis of traceless Hermitian matrices: symmetric and
/// antisymmetric pair matrices followed by the diagonal ladder, all with
/// Hilbert-Schmidt norm² equal to 2.
pub fn gell_mann_basis(dim: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(dim * dim - 1);
    for j in 0..dim {
        for k in (j + 1)..dim {
            let mut x = ComplexMatrix::zeros(dim, dim);
            x.set(j, k, Complex64::ONE);
            x.set(k, j, Complex64::ONE);
            basis.push(x);
            let mut y = ComplexMatrix::zeros(dim, dim);
            y.set(j, k, Complex64::new(0.0, -1.0));
            y.set(k, j, Complex64::new(0.0, 1.0));
            basis.push(y);
        }
    }
    for l in 1..dim {
        let scale = (2.0 / (l as f64 * (l as f64 + 1.0))).sqrt();
        let mut d = ComplexMatrix::zeros(dim, dim);
        for m in 0..l {
            d.set(m, m, Complex64::new(scale, 0.0));
        }
        d.set(l, l, Complex64::new(-scale * l as f64, 0.0));
        basis.push(d);
    }
    basis
}

const HERMITIAN_BASIS_COEFF: f64 = 0.5;

/// Minimal informationally complete quasi-POVM built from the Gell-Mann basis:
/// `E_k = I/d² + c·B_k` for each traceless basis member, with one balancing
/// slot `E_0 = I/d² - c·Σ B_k` absorbing the basis sum so the family adds up
/// to the identity. With `c = 1/2` some effects have negative eigenvalues, so
/// the family is genuinely quasi.
pub fn hermitian_basis_quasi_povm(dim: usize) -> Result<QuasiPovm> {
    if dim < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: dim });
    }
    let share = ComplexMatrix::identity(dim).scale_re(1.0 / (dim * dim) as f64);
    let basis = gell_mann_basis(dim);
    let mut basis_sum = ComplexMatrix::zeros(dim, dim);
    for b in &basis {
        basis_sum = basis_sum.add(b)?;
    }
    let mut effects = Vec::with_capacity(dim * dim);
    effects.push(share.sub(&basis_sum.scale_re(HERMITIAN_BASIS_COEFF))?);
    for b in &basis {
        effects.push(share.add(&b.scale_re(HERMITIAN_BASIS_COEFF))?);
    }
    QuasiPovm::new(dim, effects)
}
