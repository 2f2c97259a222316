//! The structural laws of the representation packaged as randomized, seeded
//! property suites with pass/fail reports.
//!
//! Every check takes a master seed and derives one independent stream per
//! trial, so reports are reproducible and trials can be evaluated in any
//! order. Residuals are max-entry norms; a report passes when the largest
//! residual stays below its tolerance.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::matrix::{kron_real, ComplexMatrix, RealMatrix};
use crate::povm::QuasiPovm;
use crate::quantum::{haar_unitary, random_channel_rng, random_state_rng, random_unital_channel};
use crate::rep::{
    check_dagger_form, natural_iso, represent_channel, represent_state, star_compose,
    tensor_coherence, transition_matrix,
};
use crate::seeding::{rng_from_seed, trial_seed};
use crate::tol;
use crate::Result;

/// One quasi-POVM per Hilbert-space dimension; the data that induces a
/// representation.
#[derive(Clone, Debug, Default)]
pub struct PovmFamily {
    by_dim: BTreeMap<usize, QuasiPovm>,
}

impl PovmFamily {
    pub fn new() -> Self {
        Self { by_dim: BTreeMap::new() }
    }

    /// Registers a family member, replacing any previous one on that dimension.
    pub fn insert(&mut self, povm: QuasiPovm) {
        self.by_dim.insert(povm.dim(), povm);
    }

    pub fn get(&self, dim: usize) -> Result<&QuasiPovm> {
        self.by_dim.get(&dim).ok_or(Error::MissingDimension { dim })
    }

    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_dim.keys().copied()
    }
}

impl FromIterator<QuasiPovm> for PovmFamily {
    fn from_iter<I: IntoIterator<Item = QuasiPovm>>(iter: I) -> Self {
        let mut family = Self::new();
        for povm in iter {
            family.insert(povm);
        }
        family
    }
}

// Kraus count for a random trial channel: varies with the trial index but
// never drops below what trace preservation requires.
fn trial_kraus(dim_in: usize, dim_out: usize, variant: usize) -> usize {
    let needed = dim_in.div_ceil(dim_out);
    needed.max(1 + variant % 3)
}

/// Outcome of a law check: residuals per trial, the largest one, and whether
/// it beat the tolerance.
#[derive(Clone, Debug)]
pub struct LawReport {
    pub law: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seed: u64,
    pub details: Vec<f64>,
    /// `αI + βJ` fit of the relevant transition matrix, when the check
    /// involves one; lets the symmetric-family criterion be inspected next to
    /// the dagger residuals.
    pub sic_form: Option<(f64, f64)>,
}

impl LawReport {
    fn from_details(law: &str, tolerance: f64, seed: u64, details: Vec<f64>) -> Self {
        let max_residual = details.iter().cloned().fold(0.0, f64::max);
        Self {
            law: String::from(law),
            trials: details.len(),
            max_residual,
            tolerance,
            passed: max_residual < tolerance,
            seed,
            details,
            sic_form: None,
        }
    }

    pub fn mean_residual(&self) -> f64 {
        if self.details.is_empty() {
            0.0
        } else {
            self.details.iter().sum::<f64>() / self.details.len() as f64
        }
    }
}

/// Composition law: `Q(Ψ∘Φ)` against `Q(Ψ) ∗ Q(Φ)` for random channel pairs
/// `Φ: n→m`, `Ψ: m→k` over the family's members on those dimensions.
///
/// Nonminimal members are allowed and route through the generalized inverse;
/// the trivial family passes with every state image constant.
pub fn check_functoriality(
    family: &PovmFamily,
    dims: (usize, usize, usize),
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<LawReport> {
    let (n, m, k) = dims;
    let povm_n = family.get(n)?;
    let povm_m = family.get(m)?;
    let povm_k = family.get(k)?;
    let t_m = transition_matrix(povm_m)?;

    let mut details = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = rng_from_seed(trial_seed(seed, trial as u64));
        let phi = random_channel_rng(n, m, trial_kraus(n, m, trial), &mut rng)?;
        let psi = random_channel_rng(m, k, trial_kraus(m, k, trial / 3), &mut rng)?;

        let direct = represent_channel(povm_n, povm_k, &psi.compose(&phi)?)?;
        let q_phi = represent_channel(povm_n, povm_m, &phi)?;
        let q_psi = represent_channel(povm_m, povm_k, &psi)?;
        let starred = star_compose(&q_psi, &q_phi, &t_m)?;
        details.push(direct.matrix().max_abs_diff(starred.matrix()));
    }
    Ok(LawReport::from_details("functoriality", tolerance, seed, details))
}

/// Dimensions for a monoidal check: a pair verifies the state tensor law and
/// channel naturality; a triple verifies the coherence equation for the
/// associativity of the coherence matrices.
#[derive(Clone, Copy, Debug)]
pub enum MonoidalDims {
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

/// Monoidal structure. For `Pair(n₁, n₂)`, each trial draws product states and
/// endo-channels and checks
/// `Q(ρ₁⊗ρ₂) = S (T₁⁻¹ ⊗ T₂⁻¹) (Q(ρ₁) ⊗ Q(ρ₂))` together with the channel
/// naturality square for `S`. For `Triple(n₁, n₂, n₃)` the deterministic
/// coherence equation
/// `S_{n₁n₂,n₃}(T_{n₁n₂}⁻¹ S_{n₁,n₂} ⊗ I) = S_{n₁,n₂n₃}(I ⊗ T_{n₂n₃}⁻¹ S_{n₂,n₃})`
/// is evaluated once; `trials` is ignored.
pub fn check_monoidal(
    family: &PovmFamily,
    dims: MonoidalDims,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<LawReport> {
    match dims {
        MonoidalDims::Pair(n1, n2) => {
            let p1 = family.get(n1)?;
            let p2 = family.get(n2)?;
            let p12 = family.get(n1 * n2)?;
            let t1 = transition_matrix(p1)?;
            let t2 = transition_matrix(p2)?;
            let t12 = transition_matrix(p12)?;
            let coherence = tensor_coherence(p1, p2, p12)?;
            let t1_inv_t2_inv = kron_real(t1.inverse(), t2.inverse());

            let mut details = Vec::with_capacity(trials);
            for trial in 0..trials {
                let mut rng = rng_from_seed(trial_seed(seed, trial as u64));

                // state tensor law
                let rho1 = random_state_rng(n1, &mut rng)?;
                let rho2 = random_state_rng(n2, &mut rng)?;
                let lhs = represent_state(p12, &rho1.tensor(&rho2))?;
                let q1 = represent_state(p1, &rho1)?;
                let q2 = represent_state(p2, &rho2)?;
                let alpha1 = t1.inverse().mul_vec(q1.entries())?;
                let alpha2 = t2.inverse().mul_vec(q2.entries())?;
                let mut product = Vec::with_capacity(alpha1.len() * alpha2.len());
                for a in &alpha1 {
                    for b in &alpha2 {
                        product.push(a * b);
                    }
                }
                let rhs = coherence.matrix.mul_vec(&product)?;
                let state_residual = lhs
                    .entries()
                    .iter()
                    .zip(&rhs)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);

                // channel naturality square
                let phi1 = random_channel_rng(n1, n1, trial_kraus(n1, n1, trial), &mut rng)?;
                let phi2 = random_channel_rng(n2, n2, trial_kraus(n2, n2, trial / 3), &mut rng)?;
                let q_phi1 = represent_channel(p1, p1, &phi1)?;
                let q_phi2 = represent_channel(p2, p2, &phi2)?;
                let left = coherence
                    .matrix
                    .matmul(&t1_inv_t2_inv)?
                    .matmul(&kron_real(q_phi1.matrix(), q_phi2.matrix()))?;
                let q_joint = represent_channel(p12, p12, &phi1.tensor(&phi2))?;
                let right = q_joint
                    .matrix()
                    .matmul(t12.inverse())?
                    .matmul(&coherence.matrix)?;
                let naturality_residual = left.max_abs_diff(&right);

                details.push(state_residual.max(naturality_residual));
            }
            Ok(LawReport::from_details("monoidal", tolerance, seed, details))
        }
        MonoidalDims::Triple(n1, n2, n3) => {
            let p1 = family.get(n1)?;
            let p2 = family.get(n2)?;
            let p3 = family.get(n3)?;
            let p12 = family.get(n1 * n2)?;
            let p23 = family.get(n2 * n3)?;
            let p123 = family.get(n1 * n2 * n3)?;
            let t12 = transition_matrix(p12)?;
            let t23 = transition_matrix(p23)?;
            let s12 = tensor_coherence(p1, p2, p12)?;
            let s23 = tensor_coherence(p2, p3, p23)?;
            let s12_3 = tensor_coherence(p12, p3, p123)?;
            let s1_23 = tensor_coherence(p1, p23, p123)?;

            let left = s12_3.matrix.matmul(&kron_real(
                &t12.inverse().matmul(&s12.matrix)?,
                &RealMatrix::identity(p3.len()),
            ))?;
            let right = s1_23.matrix.matmul(&kron_real(
                &RealMatrix::identity(p1.len()),
                &t23.inverse().matmul(&s23.matrix)?,
            ))?;
            let details = alloc::vec![left.max_abs_diff(&right)];
            Ok(LawReport::from_details("coherence", tolerance, seed, details))
        }
    }
}

/// Naturality of the intertwiner between two families: for random channels
/// `Φ: n→m`, checks `η_m (F₁∘Q₁)(Φ) = (F₂∘Q₂)(Φ) η_n`.
pub fn check_naturality(
    family_a: &PovmFamily,
    family_b: &PovmFamily,
    dims: (usize, usize),
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<LawReport> {
    let (n, m) = dims;
    let a_n = family_a.get(n)?;
    let a_m = family_a.get(m)?;
    let b_n = family_b.get(n)?;
    let b_m = family_b.get(m)?;
    let eta_n = natural_iso(a_n, b_n)?;
    let eta_m = natural_iso(a_m, b_m)?;
    let ta_n = transition_matrix(a_n)?;
    let tb_n = transition_matrix(b_n)?;

    let mut details = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = rng_from_seed(trial_seed(seed, trial as u64));
        let phi = random_channel_rng(n, m, trial_kraus(n, m, trial), &mut rng)?;
        let image_a = represent_channel(a_n, a_m, &phi)?
            .matrix()
            .matmul(ta_n.inverse())?;
        let image_b = represent_channel(b_n, b_m, &phi)?
            .matrix()
            .matmul(tb_n.inverse())?;
        let left = eta_m.matrix.matmul(&image_a)?;
        let right = image_b.matmul(&eta_n.matrix)?;
        details.push(left.max_abs_diff(&right));
    }
    Ok(LawReport::from_details("naturality", tolerance, seed, details))
}

/// Dagger compatibility: for random unital channels (uniform mixtures of
/// three Haar unitary conjugations), compares `(F∘Q)(Φ†)` with the transpose
/// of `(F∘Q)(Φ)`. The report carries the `αI + βJ` fit of the transition
/// matrix so the if-and-only-if can be inspected: the residuals stay small
/// exactly when the fit is present.
pub fn check_dagger(
    family: &PovmFamily,
    dim: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<LawReport> {
    let povm = family.get(dim)?;
    let t = transition_matrix(povm)?;

    let mut details = Vec::with_capacity(trials);
    for trial in 0..trials {
        let phi = random_unital_channel(dim, 3, trial_seed(seed, trial as u64));
        let forward = represent_channel(povm, povm, &phi)?
            .matrix()
            .matmul(t.inverse())?;
        let backward = represent_channel(povm, povm, &phi.adjoint()?)?
            .matrix()
            .matmul(t.inverse())?;
        details.push(backward.max_abs_diff(&forward.transpose()));
    }
    let mut report = LawReport::from_details("dagger", tolerance, seed, details);
    report.sic_form = check_dagger_form(&t);
    Ok(report)
}

/// Numerical rank of the span of `{U L U†}` over Haar-sampled unitaries, for
/// Hermitian seed matrices `L` (which must include the identity). Hermitian
/// images are vectorized over the reals, so the full rank is `dim²`. The rank
/// is monotone in the sample count: samples are generated per-index from the
/// master seed, so extending a sweep never changes earlier unitaries.
pub fn orbit_span_rank(
    dim: usize,
    seed_matrices: &[ComplexMatrix],
    unitary_samples: usize,
    seed: u64,
) -> Result<usize> {
    if seed_matrices.is_empty() {
        return Err(Error::IdentitySeedMissing);
    }
    let identity = ComplexMatrix::identity(dim);
    for l in seed_matrices {
        if l.rows() != dim || l.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: l.rows() });
        }
        let deviation = l.hermitian_deviation();
        if deviation > tol::HERM {
            return Err(Error::NotHermitian { deviation });
        }
    }
    if !seed_matrices
        .iter()
        .any(|l| l.max_abs_diff(&identity) < 1e-12)
    {
        return Err(Error::IdentitySeedMissing);
    }

    let d2 = dim * dim;
    let mut rows: Vec<f64> = Vec::with_capacity(unitary_samples * seed_matrices.len() * d2);
    let mut row_count = 0;
    for sample in 0..unitary_samples {
        let mut rng = rng_from_seed(trial_seed(seed, sample as u64));
        let u = haar_unitary(dim, &mut rng);
        for l in seed_matrices {
            let conjugated = u.matmul(l)?.matmul(&u.adjoint())?;
            // real coordinates: diagonal, then re/im of the upper triangle
            for i in 0..dim {
                rows.push(conjugated.get(i, i).re);
            }
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let z = conjugated.get(i, j);
                    rows.push(z.re);
                    rows.push(z.im);
                }
            }
            row_count += 1;
        }
    }
    let stacked = RealMatrix::new(row_count, d2, rows)?;
    let rank = stacked
        .singular_values()
        .into_iter()
        .filter(|&s| s > tol::GRAM_RANK)
        .count();
    Ok(rank)
}

/// Verdict of the dichotomy check on a single family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DichotomyVerdict {
    /// Every effect is a multiple of the identity; all states map to one
    /// vector.
    Trivial,
    /// The family is informationally complete; distinct states stay distinct.
    Faithful,
    /// Neither trivial nor informationally complete: such a family violates
    /// the dichotomy premises and cannot extend to a functorial
    /// representation. Carries the numerical rank of the effect span.
    ViolatesPremises { gram_rank: usize },
}

/// Classifies a family as trivial, faithful, or outside the dichotomy's
/// premises.
pub fn dichotomy_report(family: &QuasiPovm) -> DichotomyVerdict {
    let dim = family.dim();
    let trivial = family.effects().iter().zip(family.traces()).all(|(e, &t)| {
        let multiple = ComplexMatrix::identity(dim).scale_re(t / dim as f64);
        e.max_abs_diff(&multiple) < tol::TRIVIAL_EFFECT
    });
    if trivial {
        return DichotomyVerdict::Trivial;
    }
    if family.flags().informationally_complete {
        return DichotomyVerdict::Faithful;
    }
    DichotomyVerdict::ViolatesPremises { gram_rank: family.gram_rank() }
}
