//! Quasi-stochastic representations: transition matrices, the representation
//! of states, channels and measurements over quasi-POVM families, composition
//! through the transition matrix, coherence matrices for tensor products, and
//! natural isomorphisms between families.
//!
//! For a family `{E_i}` with transition matrix `T(i|j) = tr((E_j/tr E_j) E_i)`,
//! a channel `Φ` is represented by `Q(Φ)(i|j) = tr(Φ(E_j/tr E_j) E'_i)` and
//! composition becomes `s ∗ r = s T⁻¹ r` over the family of the intermediate
//! system. Representations are tagged with the content hash of their source
//! and target families so morphisms over different families cannot be mixed
//! silently.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::{hs_inner, kron, pinv, ComplexMatrix, RealMatrix};
use crate::povm::{unit_povm, computational_povm, PovmId, QuasiPovm};
use crate::quantum::{random_state, Channel, Measurement, State};
use crate::seeding::trial_seed;
use crate::tol;
use crate::Result;

/// What a quasi-stochastic matrix represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    State,
    Channel,
    Measurement,
}

/// Real vector with entries summing to one; carries Born vectors as well as
/// expansion coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiProbVector {
    entries: Vec<f64>,
}

impl QuasiProbVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > tol::COLUMN_SUM {
            return Err(Error::SumNotOne { sum });
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> f64 {
        self.entries[i]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len(), "max_abs_diff on mismatched lengths");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Structural diagnoses of a transition matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionDiagnoses {
    /// All entries nonnegative (within `-tol::PD`); holds whenever the source
    /// family is positive.
    pub stochastic: bool,
    /// Rows also sum to one; holds exactly when all effect traces agree.
    pub doubly_stochastic: bool,
    /// Equal to its transpose within `tol::EQUAL_TRACE`.
    pub symmetric: bool,
    /// Fitted `(α, β)` when the matrix has the form `αI + βJ` with
    /// `α + nβ = 1`; present exactly for generalized-SIC families.
    pub sic_form: Option<(f64, f64)>,
}

/// Transition matrix of a quasi-POVM together with its (pseudo-)inverse and
/// cached diagnoses.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    matrix: RealMatrix,
    inverse: RealMatrix,
    source_povm: PovmId,
    diagnoses: TransitionDiagnoses,
}

impl TransitionMatrix {
    /// Effect count of the source family (`n²` for minimal families).
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    /// Inverse, or Moore-Penrose pseudo-inverse when the family is not
    /// minimal (same kernel as the matrix itself).
    pub fn inverse(&self) -> &RealMatrix {
        &self.inverse
    }

    pub fn source_povm(&self) -> PovmId {
        self.source_povm
    }

    pub fn diagnoses(&self) -> &TransitionDiagnoses {
        &self.diagnoses
    }
}

/// Quasi-stochastic matrix tagged with its source and target families.
#[derive(Clone, Debug)]
pub struct QRep {
    matrix: RealMatrix,
    in_povm: PovmId,
    out_povm: PovmId,
    kind: RepKind,
}

impl QRep {
    fn new(matrix: RealMatrix, in_povm: PovmId, out_povm: PovmId, kind: RepKind) -> Result<Self> {
        for s in matrix.column_sums() {
            if (s - 1.0).abs() > tol::COLUMN_SUM {
                return Err(Error::SumNotOne { sum: s });
            }
        }
        if kind == RepKind::State && matrix.cols() != 1 {
            return Err(Error::BadShape { rows: matrix.rows(), cols: matrix.cols(), len: 1 });
        }
        Ok(Self { matrix, in_povm, out_povm, kind })
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn in_povm(&self) -> PovmId {
        self.in_povm
    }

    pub fn out_povm(&self) -> PovmId {
        self.out_povm
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    /// Reassembles a representation from its raw parts, revalidating the
    /// quasi-stochastic column sums. Intended for IO layers.
    pub fn from_parts(
        matrix: RealMatrix,
        in_povm: PovmId,
        out_povm: PovmId,
        kind: RepKind,
    ) -> Result<Self> {
        Self::new(matrix, in_povm, out_povm, kind)
    }
}

/// Transition matrix `T(i|j) = tr((E_j/tr E_j) E_i)` with cached inverse and
/// diagnoses. Fails on effects with (near-)zero trace.
pub fn transition_matrix(povm: &QuasiPovm) -> Result<TransitionMatrix> {
    let n = povm.len();
    for (i, &t) in povm.traces().iter().enumerate() {
        if t.abs() <= tol::EFFECT_TRACE_MIN {
            return Err(Error::ZeroTraceEffect { index: i });
        }
    }
    let gram = povm.gram();
    let matrix = RealMatrix::from_fn(n, n, |i, j| gram.get(i, j) / povm.traces()[j]);
    let inverse = pinv(&matrix, tol::PINV_REL)?;

    let stochastic = matrix.min_entry() >= -tol::PD;
    let doubly_stochastic = matrix
        .row_sums()
        .iter()
        .all(|s| (s - 1.0).abs() <= tol::EQUAL_TRACE);
    let symmetric = matrix.is_symmetric(tol::EQUAL_TRACE);
    let sic_form = fit_sic_form(&matrix);

    Ok(TransitionMatrix {
        matrix,
        inverse,
        source_povm: povm.id(),
        diagnoses: TransitionDiagnoses { stochastic, doubly_stochastic, symmetric, sic_form },
    })
}

/// Fits `m = αI + βJ` with `α + nβ = 1`; `β` is the off-diagonal mean and `α`
/// the diagonal mean minus `β`, which damps entrywise rounding. Returns the
/// fit only when the residual stays below [`tol::SIC_FORM`].
pub fn fit_sic_form(m: &RealMatrix) -> Option<(f64, f64)> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    if n == 1 {
        let alpha = m.get(0, 0);
        return ((alpha - 1.0).abs() < tol::SIC_FORM).then_some((alpha, 0.0));
    }
    let mut diag = 0.0;
    let mut off = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                diag += m.get(i, j);
            } else {
                off += m.get(i, j);
            }
        }
    }
    let beta = off / (n * n - n) as f64;
    let alpha = diag / n as f64 - beta;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let model = if i == j { alpha + beta } else { beta };
            worst = worst.max((m.get(i, j) - model).abs());
        }
    }
    let normalized = (alpha + n as f64 * beta - 1.0).abs() < tol::SIC_FORM;
    (worst < tol::SIC_FORM && normalized).then_some((alpha, beta))
}

/// Cached `αI + βJ` fit of a transition matrix; present exactly when the
/// source family is generalized SIC.
pub fn check_dagger_form(t: &TransitionMatrix) -> Option<(f64, f64)> {
    t.diagnoses().sic_form
}

/// Born vector `p(i) = tr(ρ E_i)`.
pub fn represent_state(povm: &QuasiPovm, rho: &State) -> Result<QuasiProbVector> {
    if rho.dim() != povm.dim() {
        return Err(Error::DimensionMismatch { expected: povm.dim(), found: rho.dim() });
    }
    let entries = povm
        .effects()
        .iter()
        .map(|e| Ok(hs_inner(rho.matrix(), e)?.re))
        .collect::<Result<Vec<f64>>>()?;
    QuasiProbVector::new(entries)
}

/// Inverts the Born vector of a minimal family:
/// `ρ = Σ_i (T⁻¹ p)_i E_i / tr(E_i)`.
///
/// Nonminimal families are refused; use
/// [`reconstruct_state_generalized`] to opt into the pseudo-inverse.
pub fn reconstruct_state(povm: &QuasiPovm, p: &QuasiProbVector) -> Result<State> {
    if !povm.flags().minimal {
        return Err(Error::NotMinimal);
    }
    reconstruct_state_generalized(povm, p)
}

/// Reconstruction through the generalized inverse of `T` (same kernel as `T`);
/// the canonical choice of expansion coefficients for nonminimal families.
pub fn reconstruct_state_generalized(povm: &QuasiPovm, p: &QuasiProbVector) -> Result<State> {
    if p.len() != povm.len() {
        return Err(Error::LengthMismatch { expected: povm.len(), found: p.len() });
    }
    let t = transition_matrix(povm)?;
    let alpha = t.inverse().mul_vec(p.entries())?;
    let mut rho = ComplexMatrix::zeros(povm.dim(), povm.dim());
    for (i, &a) in alpha.iter().enumerate() {
        rho = rho.add(&povm.normalized_effect(i)?.scale_re(a))?;
    }
    State::new(rho)
}

/// Expansion coefficients `α = T⁻¹ p` of a Born vector.
pub fn expansion_coefficients(povm: &QuasiPovm, p: &QuasiProbVector) -> Result<QuasiProbVector> {
    if p.len() != povm.len() {
        return Err(Error::LengthMismatch { expected: povm.len(), found: p.len() });
    }
    let t = transition_matrix(povm)?;
    QuasiProbVector::new(t.inverse().mul_vec(p.entries())?)
}

/// Representation `Q(Φ)(i|j) = tr(Φ(E_j/tr E_j) E'_i)` of a channel between
/// the families on its input and output dimensions.
pub fn represent_channel(
    in_povm: &QuasiPovm,
    out_povm: &QuasiPovm,
    phi: &Channel,
) -> Result<QRep> {
    if phi.dim_in() != in_povm.dim() {
        return Err(Error::DimensionMismatch { expected: in_povm.dim(), found: phi.dim_in() });
    }
    if phi.dim_out() != out_povm.dim() {
        return Err(Error::DimensionMismatch { expected: out_povm.dim(), found: phi.dim_out() });
    }
    let rows = out_povm.len();
    let cols = in_povm.len();
    let mut matrix = RealMatrix::zeros(rows, cols);
    for j in 0..cols {
        let image = phi.apply_raw(&in_povm.normalized_effect(j)?)?;
        for i in 0..rows {
            matrix.set(i, j, hs_inner(&image, out_povm.effect(i))?.re);
        }
    }
    let kind = if in_povm.dim() == 1 { RepKind::State } else { RepKind::Channel };
    QRep::new(matrix, in_povm.id(), out_povm.id(), kind)
}

/// Born vector of a state as a one-column representation from the
/// one-dimensional algebra; identical to representing the state-as-channel.
pub fn state_qrep(povm: &QuasiPovm, rho: &State) -> Result<QRep> {
    let p = represent_state(povm, rho)?;
    let matrix = RealMatrix::from_column(p.entries());
    QRep::new(matrix, unit_povm().id(), povm.id(), RepKind::State)
}

/// Measurement representation `Q(Â)(k|i) = tr(A_k E_i/tr E_i)`: a stochastic
/// matrix onto the computational family with one row per outcome.
pub fn represent_measurement(povm: &QuasiPovm, meas: &Measurement) -> Result<QRep> {
    if meas.dim() != povm.dim() {
        return Err(Error::DimensionMismatch { expected: povm.dim(), found: meas.dim() });
    }
    let rows = meas.outcomes();
    let cols = povm.len();
    let mut matrix = RealMatrix::zeros(rows, cols);
    for i in 0..cols {
        let normalized = povm.normalized_effect(i)?;
        for k in 0..rows {
            matrix.set(k, i, hs_inner(&meas.effects()[k], &normalized)?.re);
        }
    }
    QRep::new(matrix, povm.id(), computational_povm(rows).id(), RepKind::Measurement)
}

/// Star composition `s ∗ r = s T⁻¹ r` over the family of the intermediate
/// system. The POVM tags of both morphisms and the transition matrix must
/// agree on that family.
pub fn star_compose(s: &QRep, r: &QRep, t: &TransitionMatrix) -> Result<QRep> {
    if r.out_povm() != s.in_povm()
        || s.in_povm() != t.source_povm()
    {
        return Err(Error::PovmMismatch);
    }
    if s.cols() != t.size() || t.size() != r.rows() {
        return Err(Error::ShapeMismatch {
            left: (s.rows(), s.cols()),
            right: (r.rows(), r.cols()),
        });
    }
    let matrix = s.matrix().matmul(t.inverse())?.matmul(r.matrix())?;
    let kind = if r.kind() == RepKind::State {
        RepKind::State
    } else if s.kind() == RepKind::Measurement {
        RepKind::Measurement
    } else {
        RepKind::Channel
    };
    QRep::new(matrix, r.in_povm(), s.out_povm(), kind)
}

/// Which side the basis change acts on when passing from star composition to
/// plain matrix composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `A ↦ A T⁻¹` (states stay nonnegative, effects pick up negativity).
    Right,
    /// `A ↦ T⁻¹ A` (the positivity convention flips).
    Left,
}

/// Image of a representation under the isomorphism onto plainly-composing
/// quasi-stochastic matrices: `r T⁻¹` (right) or `T⁻¹ r` (left). The
/// transition matrix must belong to the input family for `Right` and to the
/// output family for `Left`.
pub fn to_qstoch(r: &QRep, t: &TransitionMatrix, side: Side) -> Result<QRep> {
    match side {
        Side::Right => {
            if t.source_povm() != r.in_povm() {
                return Err(Error::PovmMismatch);
            }
            let matrix = r.matrix().matmul(t.inverse())?;
            QRep::new(matrix, r.in_povm(), r.out_povm(), r.kind())
        }
        Side::Left => {
            if t.source_povm() != r.out_povm() {
                return Err(Error::PovmMismatch);
            }
            let matrix = t.inverse().matmul(r.matrix())?;
            QRep::new(matrix, r.in_povm(), r.out_povm(), r.kind())
        }
    }
}

/// Coherence matrix for a tensor product of families, with singular-value
/// diagnostics for its conditioning.
#[derive(Clone, Debug)]
pub struct CoherenceMatrix {
    pub matrix: RealMatrix,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

/// Coherence matrix
/// `S(j | i₁i₂) = tr((E_{i₁}/tr E_{i₁}) ⊗ (E_{i₂}/tr E_{i₂}) · E_j)`
/// relating the product of two families to the family on the composite
/// dimension. Columns are indexed `i₁·len₂ + i₂`, matching the Kronecker
/// convention of the matrix layer. All three families must be minimal.
pub fn tensor_coherence(
    povm1: &QuasiPovm,
    povm2: &QuasiPovm,
    povm12: &QuasiPovm,
) -> Result<CoherenceMatrix> {
    if povm12.dim() != povm1.dim() * povm2.dim() {
        return Err(Error::DimensionMismatch {
            expected: povm1.dim() * povm2.dim(),
            found: povm12.dim(),
        });
    }
    if !(povm1.flags().minimal && povm2.flags().minimal && povm12.flags().minimal) {
        return Err(Error::NotMinimal);
    }
    let rows = povm12.len();
    let cols = povm1.len() * povm2.len();
    let mut matrix = RealMatrix::zeros(rows, cols);
    for i1 in 0..povm1.len() {
        let n1 = povm1.normalized_effect(i1)?;
        for i2 in 0..povm2.len() {
            let probe = kron(&n1, &povm2.normalized_effect(i2)?);
            let col = i1 * povm2.len() + i2;
            for j in 0..rows {
                matrix.set(j, col, hs_inner(&probe, povm12.effect(j))?.re);
            }
        }
    }
    let singular = matrix.singular_values();
    let sigma_max = singular.iter().cloned().fold(0.0, f64::max);
    let sigma_min = singular.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(CoherenceMatrix { matrix, sigma_min, sigma_max })
}

/// Invertible intertwiner between the representations induced by two minimal
/// families on the same dimension.
#[derive(Clone, Debug)]
pub struct NaturalIso {
    pub matrix: RealMatrix,
    pub inverse: RealMatrix,
}

/// Natural isomorphism `η = S T_a⁻¹` with
/// `S(i|j) = tr((E_j/tr E_j) F_i)` between the representations of family `a`
/// (effects `E`) and family `b` (effects `F`) on one dimension.
pub fn natural_iso(povm_a: &QuasiPovm, povm_b: &QuasiPovm) -> Result<NaturalIso> {
    if povm_a.dim() != povm_b.dim() {
        return Err(Error::DimensionMismatch { expected: povm_a.dim(), found: povm_b.dim() });
    }
    if !(povm_a.flags().minimal && povm_b.flags().minimal) {
        return Err(Error::NotMinimal);
    }
    let n = povm_a.len();
    let mut s = RealMatrix::zeros(povm_b.len(), n);
    for j in 0..n {
        let normalized = povm_a.normalized_effect(j)?;
        for i in 0..povm_b.len() {
            s.set(i, j, hs_inner(&normalized, povm_b.effect(i))?.re);
        }
    }
    let t_a = transition_matrix(povm_a)?;
    let matrix = s.matmul(t_a.inverse())?;
    let inverse = pinv(&matrix, tol::PINV_REL)?;
    Ok(NaturalIso { matrix, inverse })
}

/// Total mass of strictly negative entries: `Σ_{x<0} |x|`.
pub fn negativity(entries: &[f64]) -> f64 {
    entries.iter().filter(|&&x| x < 0.0).map(|x| -x).sum()
}

const AFFINITY_PROBES: usize = 2;
const AFFINITY_SEED: u64 = 0x5EED_AFF1;

/// Recovers the quasi-POVM behind an affine state map: evaluates the map on a
/// spanning set of `dim²` density matrices (basis states and the two-level
/// superposition states) and solves for Hermitian effects. The map is
/// spot-checked for affinity on random state mixtures first, and the recovered
/// family is validated at `tol::EXTRACT`.
pub fn extract_quasi_povm(
    dim: usize,
    state_map: &dyn Fn(&State) -> Result<QuasiProbVector>,
    out_len: usize,
) -> Result<QuasiPovm> {
    if dim == 0 || out_len == 0 {
        return Err(Error::BadShape { rows: dim, cols: dim, len: out_len });
    }

    // affinity spot check on random mixtures
    for probe in 0..AFFINITY_PROBES {
        let rho = random_state(dim, trial_seed(AFFINITY_SEED, 2 * probe as u64))?;
        let sigma = random_state(dim, trial_seed(AFFINITY_SEED, 2 * probe as u64 + 1))?;
        for &t in &[0.3, 0.5] {
            let mixed = state_map(&rho.mix(&sigma, t)?)?;
            let f_rho = state_map(&rho)?;
            let f_sigma = state_map(&sigma)?;
            if mixed.len() != out_len || f_rho.len() != out_len {
                return Err(Error::LengthMismatch { expected: out_len, found: mixed.len() });
            }
            let mut worst = 0.0f64;
            for i in 0..out_len {
                let combo = t * f_rho.get(i) + (1.0 - t) * f_sigma.get(i);
                worst = worst.max((mixed.get(i) - combo).abs());
            }
            if worst > tol::EXTRACT {
                return Err(Error::NotAffine { deviation: worst });
            }
        }
    }

    // evaluate on the spanning probes
    let basis_values: Vec<QuasiProbVector> = (0..dim)
        .map(|k| {
            let mut v = alloc::vec![Complex64::ZERO; dim];
            v[k] = Complex64::ONE;
            state_map(&State::pure(&v)?)
        })
        .collect::<Result<_>>()?;
    let mut real_values = Vec::new();
    let mut imag_values = Vec::new();
    for j in 0..dim {
        for k in (j + 1)..dim {
            let mut vx = alloc::vec![Complex64::ZERO; dim];
            vx[j] = Complex64::ONE;
            vx[k] = Complex64::ONE;
            real_values.push((j, k, state_map(&State::pure(&vx)?)?));
            let mut vy = alloc::vec![Complex64::ZERO; dim];
            vy[j] = Complex64::ONE;
            vy[k] = Complex64::new(0.0, 1.0);
            imag_values.push((j, k, state_map(&State::pure(&vy)?)?));
        }
    }

    // solve for each Hermitian effect
    let mut effects = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let mut e = ComplexMatrix::zeros(dim, dim);
        for k in 0..dim {
            e.set(k, k, Complex64::new(basis_values[k].get(i), 0.0));
        }
        for (j, k, values) in &real_values {
            let mean = 0.5 * (e.get(*j, *j).re + e.get(*k, *k).re);
            let re = values.get(i) - mean;
            e.set(*j, *k, Complex64::new(re, e.get(*j, *k).im));
            e.set(*k, *j, Complex64::new(re, -e.get(*j, *k).im));
        }
        for (j, k, values) in &imag_values {
            let mean = 0.5 * (e.get(*j, *j).re + e.get(*k, *k).re);
            let im = mean - values.get(i);
            let re = e.get(*j, *k).re;
            e.set(*j, *k, Complex64::new(re, im));
            e.set(*k, *j, Complex64::new(re, -im));
        }
        effects.push(e);
    }

    QuasiPovm::new_with_sum_tol(dim, effects, tol::EXTRACT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RealMatrix;
    use crate::povm::{
        hermitian_basis_quasi_povm, random_minimal_ic, tetrahedron_povm, trivial_quasi_povm,
    };
    use crate::quantum::test_support::{hadamard, ket0};
    use crate::quantum::{random_channel, Channel, Measurement};

    const INV_SQRT3: f64 = 0.577_350_269_189_625_8;

    fn sic_t() -> RealMatrix {
        RealMatrix::from_fn(4, 4, |i, j| if i == j { 0.5 } else { 1.0 / 6.0 })
    }

    #[test]
    fn tetrahedron_transition_matrix_is_the_symmetric_form() {
        let t = transition_matrix(&tetrahedron_povm()).unwrap();
        assert!(t.matrix().max_abs_diff(&sic_t()) < 1e-14);
        let inverse = RealMatrix::from_fn(4, 4, |i, j| if i == j { 2.5 } else { -0.5 });
        assert!(t.inverse().max_abs_diff(&inverse) < 1e-12);
        let d = t.diagnoses();
        assert!(d.stochastic && d.doubly_stochastic && d.symmetric);
        let (alpha, beta) = d.sic_form.unwrap();
        assert!((alpha - 1.0 / 3.0).abs() < 1e-12);
        assert!((beta - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_transition_matrix_has_constant_columns() {
        let w = [0.1, 0.2, 0.3, 0.4];
        let t = transition_matrix(&trivial_quasi_povm(2, &w).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((t.matrix().get(i, j) - w[i]).abs() < 1e-14);
            }
        }
        for s in t.matrix().column_sums() {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_ic_transition_columns_sum_to_one_and_invert() {
        let povm = random_minimal_ic(3, 7).unwrap();
        let t = transition_matrix(&povm).unwrap();
        for s in t.matrix().column_sums() {
            assert!((s - 1.0).abs() < 1e-12);
        }
        let prod = t.matrix().matmul(t.inverse()).unwrap();
        assert!(prod.max_abs_diff(&RealMatrix::identity(9)) < 1e-9);
    }

    #[test]
    fn fit_sic_form_on_identity() {
        let fit = fit_sic_form(&RealMatrix::identity(5)).unwrap();
        assert!((fit.0 - 1.0).abs() < 1e-14);
        assert!(fit.1.abs() < 1e-14);
    }

    #[test]
    fn fit_sic_form_absent_for_generic_families() {
        let povm = random_minimal_ic(2, 11).unwrap();
        let t = transition_matrix(&povm).unwrap();
        assert!(t.diagnoses().sic_form.is_none());
    }

    #[test]
    fn represent_maximally_mixed_state() {
        let p = represent_state(&tetrahedron_povm(), &State::maximally_mixed(2)).unwrap();
        for i in 0..4 {
            assert!((p.get(i) - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn represent_ket0_frozen_values() {
        let p = represent_state(&tetrahedron_povm(), &ket0()).unwrap();
        let expected = [
            (1.0 + INV_SQRT3) / 4.0,
            (1.0 - INV_SQRT3) / 4.0,
            (1.0 - INV_SQRT3) / 4.0,
            (1.0 + INV_SQRT3) / 4.0,
        ];
        for i in 0..4 {
            assert!((p.get(i) - expected[i]).abs() < 1e-14);
        }
        // ≈ (0.39434, 0.10566, 0.10566, 0.39434)
        assert!((p.get(0) - 0.39434).abs() < 1e-5);
        assert!((p.get(1) - 0.10566).abs() < 1e-5);
    }

    #[test]
    fn represent_over_trivial_family_returns_the_weights() {
        let w = [0.4, 0.3, 0.2, 0.1];
        let povm = trivial_quasi_povm(2, &w).unwrap();
        for seed in 0..5 {
            let rho = random_state(2, seed).unwrap();
            let p = represent_state(&povm, &rho).unwrap();
            for i in 0..4 {
                assert!((p.get(i) - w[i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn expansion_coefficients_of_ket0() {
        let povm = tetrahedron_povm();
        let p = represent_state(&povm, &ket0()).unwrap();
        let alpha = expansion_coefficients(&povm, &p).unwrap();
        // α = 3p - 1/2 via the closed-form inverse
        let expected = [0.683_012_701_892_219_3, -0.183_012_701_892_219_32];
        assert!((alpha.get(0) - expected[0]).abs() < 1e-12);
        assert!((alpha.get(1) - expected[1]).abs() < 1e-12);
        assert!((alpha.get(2) - expected[1]).abs() < 1e-12);
        assert!((alpha.get(3) - expected[0]).abs() < 1e-12);
        assert!((negativity(alpha.entries()) - 0.366_025_403_784_438_65).abs() < 1e-12);
    }

    #[test]
    fn reconstruct_uniform_vector_gives_maximally_mixed() {
        let povm = tetrahedron_povm();
        let p = QuasiProbVector::new(alloc::vec![0.25; 4]).unwrap();
        let rho = reconstruct_state(&povm, &p).unwrap();
        assert!(rho.matrix().max_abs_diff(State::maximally_mixed(2).matrix()) < 1e-13);
    }

    #[test]
    fn state_round_trip_over_catalog_families() {
        let families = [
            tetrahedron_povm(),
            random_minimal_ic(2, 3).unwrap(),
            hermitian_basis_quasi_povm(2).unwrap(),
        ];
        for povm in &families {
            for seed in 0..20 {
                let rho = random_state(2, 100 + seed).unwrap();
                let p = represent_state(povm, &rho).unwrap();
                let back = reconstruct_state(povm, &p).unwrap();
                assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-10);
            }
        }
    }

    #[test]
    fn reconstruct_refuses_nonminimal_families() {
        let povm = trivial_quasi_povm(2, &[0.25; 4]).unwrap();
        let p = QuasiProbVector::new(alloc::vec![0.25; 4]).unwrap();
        assert!(matches!(reconstruct_state(&povm, &p), Err(Error::NotMinimal)));
    }

    #[test]
    fn identity_channel_represents_as_the_transition_matrix() {
        let povm = tetrahedron_povm();
        let t = transition_matrix(&povm).unwrap();
        let q = represent_channel(&povm, &povm, &Channel::identity(2)).unwrap();
        assert!(q.matrix().max_abs_diff(t.matrix()) < 1e-13);
    }

    #[test]
    fn depolarizing_channel_represents_with_uniform_columns() {
        let povm = tetrahedron_povm();
        let q =
            represent_channel(&povm, &povm, &Channel::depolarizing(2, 1.0).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((q.matrix().get(i, j) - 0.25).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn state_as_channel_reproduces_the_born_vector() {
        let povm = tetrahedron_povm();
        let rho = random_state(2, 21).unwrap();
        let via_channel =
            represent_channel(&unit_povm(), &povm, &Channel::from_state(&rho)).unwrap();
        let direct = state_qrep(&povm, &rho).unwrap();
        assert_eq!(via_channel.kind(), RepKind::State);
        assert!(via_channel.matrix().max_abs_diff(direct.matrix()) < 1e-12);
    }

    #[test]
    fn star_composition_with_transition_matrix_is_identity() {
        let povm = tetrahedron_povm();
        let t = transition_matrix(&povm).unwrap();
        let q = represent_channel(&povm, &povm, &Channel::identity(2)).unwrap();
        let composed = star_compose(&q, &q, &t).unwrap();
        assert!(composed.matrix().max_abs_diff(q.matrix()) < 1e-12);
    }

    #[test]
    fn star_composition_matches_direct_composition() {
        let p2 = tetrahedron_povm();
        let p3 = random_minimal_ic(3, 13).unwrap();
        let t3 = transition_matrix(&p3).unwrap();
        for seed in 0..10 {
            let phi = random_channel(2, 3, 2, 300 + seed).unwrap();
            let psi = random_channel(3, 2, 2, 400 + seed).unwrap();
            let lhs =
                represent_channel(&p2, &p2, &psi.compose(&phi).unwrap()).unwrap();
            let q_phi = represent_channel(&p2, &p3, &phi).unwrap();
            let q_psi = represent_channel(&p3, &p2, &psi).unwrap();
            let rhs = star_compose(&q_psi, &q_phi, &t3).unwrap();
            assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-9);
        }
    }

    #[test]
    fn star_composition_rejects_mismatched_families() {
        let p2 = tetrahedron_povm();
        let other = random_minimal_ic(2, 5).unwrap();
        let t_other = transition_matrix(&other).unwrap();
        let q = represent_channel(&p2, &p2, &Channel::identity(2)).unwrap();
        assert!(matches!(
            star_compose(&q, &q, &t_other),
            Err(Error::PovmMismatch)
        ));
    }

    #[test]
    fn measurement_pipeline_reproduces_the_born_rule() {
        let povm = tetrahedron_povm();
        let t = transition_matrix(&povm).unwrap();
        let meas = Measurement::computational(2);
        let q_meas = represent_measurement(&povm, &meas).unwrap();

        // frozen row: tr(|0><0| E_i)/tr(E_i) = (1 ± 1/√3)/2
        let row = [
            (1.0 + INV_SQRT3) / 2.0,
            (1.0 - INV_SQRT3) / 2.0,
            (1.0 - INV_SQRT3) / 2.0,
            (1.0 + INV_SQRT3) / 2.0,
        ];
        for i in 0..4 {
            assert!((q_meas.matrix().get(0, i) - row[i]).abs() < 1e-13);
        }

        let q_rho = state_qrep(&povm, &ket0()).unwrap();
        let probs = star_compose(&q_meas, &q_rho, &t).unwrap();
        assert!((probs.matrix().get(0, 0) - 1.0).abs() < 1e-12);
        assert!(probs.matrix().get(1, 0).abs() < 1e-12);
    }

    #[test]
    fn one_outcome_measurement_represents_as_a_row_of_ones() {
        let povm = tetrahedron_povm();
        let meas = Measurement::new(2, alloc::vec![ComplexMatrix::identity(2)]).unwrap();
        let q = represent_measurement(&povm, &meas).unwrap();
        for i in 0..4 {
            assert!((q.matrix().get(0, i) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn to_qstoch_of_transition_matrix_is_identity() {
        let povm = tetrahedron_povm();
        let t = transition_matrix(&povm).unwrap();
        let q = represent_channel(&povm, &povm, &Channel::identity(2)).unwrap();
        let f = to_qstoch(&q, &t, Side::Right).unwrap();
        assert!(f.matrix().max_abs_diff(&RealMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn to_qstoch_images_compose_by_plain_multiplication() {
        let povm = tetrahedron_povm();
        let t = transition_matrix(&povm).unwrap();
        let had = Channel::from_unitary(hadamard()).unwrap();
        let q = represent_channel(&povm, &povm, &had).unwrap();
        let f = to_qstoch(&q, &t, Side::Right).unwrap();
        // H² = I, so the squared image is the image of the identity
        let square = f.matrix().matmul(f.matrix()).unwrap();
        assert!(square.max_abs_diff(&RealMatrix::identity(4)) < 1e-9);
    }

    #[test]
    fn natural_iso_of_a_family_with_itself_is_identity() {
        let povm = tetrahedron_povm();
        let eta = natural_iso(&povm, &povm).unwrap();
        assert!(eta.matrix.max_abs_diff(&RealMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn natural_iso_is_invertible() {
        let a = tetrahedron_povm();
        let b = random_minimal_ic(2, 17).unwrap();
        let eta = natural_iso(&a, &b).unwrap();
        let prod = eta.matrix.matmul(&eta.inverse).unwrap();
        assert!(prod.max_abs_diff(&RealMatrix::identity(4)) < 1e-9);
    }

    #[test]
    fn negativity_examples() {
        assert_eq!(negativity(&[0.25, 0.25, 0.25, 0.25]), 0.0);
        let povm = tetrahedron_povm();
        let t = transition_matrix(&povm).unwrap();
        let n = negativity(t.inverse().entries());
        // twelve off-diagonal entries of -1/2
        assert!((n - 6.0).abs() < 1e-11);
    }

    #[test]
    fn extraction_round_trips_the_tetrahedron() {
        let povm = tetrahedron_povm();
        let map = |rho: &State| represent_state(&povm, rho);
        let recovered = extract_quasi_povm(2, &map, 4).unwrap();
        for (e, f) in recovered.effects().iter().zip(povm.effects()) {
            assert!(e.max_abs_diff(f) < 1e-9);
        }
    }

    #[test]
    fn extraction_of_a_constant_map_gives_the_trivial_family() {
        let w = [0.1, 0.2, 0.3, 0.4];
        let map = |_: &State| QuasiProbVector::new(w.to_vec());
        let recovered = extract_quasi_povm(2, &map, 4).unwrap();
        let trivial = trivial_quasi_povm(2, &w).unwrap();
        for (e, f) in recovered.effects().iter().zip(trivial.effects()) {
            assert!(e.max_abs_diff(f) < 1e-12);
        }
    }

    #[test]
    fn extraction_recovers_a_genuinely_quasi_family() {
        let povm = hermitian_basis_quasi_povm(2).unwrap();
        let map = |rho: &State| represent_state(&povm, rho);
        let recovered = extract_quasi_povm(2, &map, 4).unwrap();
        assert!(!recovered.flags().positive);
        for (e, f) in recovered.effects().iter().zip(povm.effects()) {
            assert!(e.max_abs_diff(f) < 1e-9);
        }
    }

    #[test]
    fn extraction_rejects_non_affine_maps() {
        let map = |rho: &State| {
            let p = rho.matrix().get(0, 0).re;
            QuasiProbVector::new(alloc::vec![p * p, 1.0 - p * p])
        };
        assert!(matches!(
            extract_quasi_povm(2, &map, 2),
            Err(Error::NotAffine { .. })
        ));
    }
}
