//! States, Kraus channels, and POVM measurements, with validation and seeded
//! random instances.
//!
//! Channels are stored in Kraus form: composition and tensoring act directly on
//! the operator lists, and the Choi matrix is assembled on demand. Dimension-1
//! matrix algebra is allowed everywhere, so a state doubles as a channel from
//! the one-dimensional algebra without special casing.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Error;
use crate::matrix::{kron, ComplexMatrix, eig_hermitian};
use crate::seeding::{rng_from_seed, trial_seed};
use crate::tol;
use crate::Result;

/// Density operator: Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    dim: usize,
    matrix: ComplexMatrix,
}

impl State {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol::HERM {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::TRACE_ONE {
            return Err(Error::TraceNotOne { trace });
        }
        let dec = eig_hermitian(&matrix)?;
        let min = dec.min_eigenvalue();
        if min < -tol::PD {
            return Err(Error::NotPositive { eigenvalue: min });
        }
        Ok(Self { dim: matrix.rows(), matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    /// Pure state `v v† / ‖v‖²`.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::NonFinite);
        }
        let matrix = ComplexMatrix::outer(amplitudes).scale_re(1.0 / norm_sq);
        Ok(Self { dim: amplitudes.len(), matrix })
    }

    /// Convex mixture `t·self + (1-t)·other`.
    pub fn mix(&self, other: &State, t: f64) -> Result<State> {
        let m = self
            .matrix
            .scale_re(t)
            .add(&other.matrix.scale_re(1.0 - t))?;
        State::new(m)
    }

    /// Tensor product state.
    pub fn tensor(&self, other: &State) -> State {
        State {
            dim: self.dim * other.dim,
            matrix: kron(&self.matrix, &other.matrix),
        }
    }
}

/// Completely positive trace-preserving map in Kraus form.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl Channel {
    /// Validates shapes and trace preservation (`Σ K†K = I` within
    /// [`tol::TRACE_PRESERVING`]). Complete positivity holds by construction
    /// for Kraus-form maps.
    pub fn new(dim_in: usize, dim_out: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::EmptyKraus);
        }
        for k in &kraus {
            if k.rows() != dim_out || k.cols() != dim_in {
                return Err(Error::ShapeMismatch {
                    left: (dim_out, dim_in),
                    right: (k.rows(), k.cols()),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
        for k in &kraus {
            sum = sum.add(&k.adjoint().matmul(k)?)?;
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim_in));
        if deviation > tol::TRACE_PRESERVING {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { dim_in, dim_out, kraus })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn identity(dim: usize) -> Self {
        Self { dim_in: dim, dim_out: dim, kraus: alloc::vec![ComplexMatrix::identity(dim)] }
    }

    /// Unitary conjugation `ρ ↦ UρU†`.
    pub fn from_unitary(u: ComplexMatrix) -> Result<Self> {
        Self::new(u.cols(), u.rows(), alloc::vec![u])
    }

    /// A state viewed as a channel from the one-dimensional algebra.
    pub fn from_state(rho: &State) -> Self {
        // Kraus columns √λ_k v_k; Σ K†K = tr(ρ) = 1.
        let dec = eig_hermitian(rho.matrix()).expect("states are Hermitian");
        let mut kraus = Vec::new();
        for (k, &lambda) in dec.eigenvalues.iter().enumerate() {
            if lambda <= 0.0 {
                continue;
            }
            let col = ComplexMatrix::from_fn(rho.dim(), 1, |i, _| {
                dec.eigenvectors.get(i, k) * Complex64::new(lambda.sqrt(), 0.0)
            });
            kraus.push(col);
        }
        if kraus.is_empty() {
            // fully degenerate numerical corner; fall back to the first column
            kraus.push(ComplexMatrix::zeros(rho.dim(), 1));
        }
        Self { dim_in: 1, dim_out: rho.dim(), kraus }
    }

    /// Depolarizing channel `ρ ↦ (1-λ)ρ + λ tr(ρ) I/d`.
    pub fn depolarizing(dim: usize, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::NonFinite);
        }
        let mut kraus = Vec::with_capacity(dim * dim + 1);
        if lambda < 1.0 {
            kraus.push(ComplexMatrix::identity(dim).scale_re((1.0 - lambda).sqrt()));
        }
        if lambda > 0.0 {
            let w = (lambda / dim as f64).sqrt();
            for i in 0..dim {
                for j in 0..dim {
                    let mut k = ComplexMatrix::zeros(dim, dim);
                    k.set(i, j, Complex64::new(w, 0.0));
                    kraus.push(k);
                }
            }
        }
        Self::new(dim, dim, kraus)
    }

    /// Qubit amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::NonFinite);
        }
        let mut k0 = ComplexMatrix::identity(2);
        k0.set(1, 1, Complex64::new((1.0 - gamma).sqrt(), 0.0));
        let mut k1 = ComplexMatrix::zeros(2, 2);
        k1.set(0, 1, Complex64::new(gamma.sqrt(), 0.0));
        Self::new(2, 2, alloc::vec![k0, k1])
    }

    /// Applies the channel to an arbitrary matrix: `Σ K m K†`.
    ///
    /// This is the linear extension used on (possibly non-positive) quasi-POVM
    /// effects; [`Channel::apply`] is the state-level wrapper.
    pub fn apply_raw(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.rows() != self.dim_in || m.cols() != self.dim_in {
            return Err(Error::DimensionMismatch { expected: self.dim_in, found: m.rows() });
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = out.add(&k.matmul(m)?.matmul(&k.adjoint())?)?;
        }
        Ok(out)
    }

    /// Applies the channel to a state; the output is validated.
    pub fn apply(&self, rho: &State) -> Result<State> {
        State::new(self.apply_raw(rho.matrix())?)
    }

    /// Sequential composition `self ∘ inner` (inner acts first).
    pub fn compose(&self, inner: &Channel) -> Result<Channel> {
        if inner.dim_out != self.dim_in {
            return Err(Error::DimensionMismatch { expected: self.dim_in, found: inner.dim_out });
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * inner.kraus.len());
        for l in &self.kraus {
            for k in &inner.kraus {
                kraus.push(l.matmul(k)?);
            }
        }
        Ok(Channel { dim_in: inner.dim_in, dim_out: self.dim_out, kraus })
    }

    /// Parallel composition; dimensions multiply.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|k| other.kraus.iter().map(move |l| kron(k, l)))
            .collect();
        Channel {
            dim_in: self.dim_in * other.dim_in,
            dim_out: self.dim_out * other.dim_out,
            kraus,
        }
    }

    /// Convex mixture `t·self + (1-t)·other`, realized as a Kraus union with
    /// `√t`, `√(1-t)` scaling.
    pub fn mix(&self, other: &Channel, t: f64) -> Result<Channel> {
        if self.dim_in != other.dim_in || self.dim_out != other.dim_out {
            return Err(Error::DimensionMismatch { expected: self.dim_in, found: other.dim_in });
        }
        let mut kraus = Vec::new();
        if t > 0.0 {
            let s = t.sqrt();
            kraus.extend(self.kraus.iter().map(|k| k.scale_re(s)));
        }
        if t < 1.0 {
            let s = (1.0 - t).sqrt();
            kraus.extend(other.kraus.iter().map(|k| k.scale_re(s)));
        }
        Ok(Channel { dim_in: self.dim_in, dim_out: self.dim_out, kraus })
    }

    /// Deviation of `Σ K K†` from the identity; zero exactly for unital maps.
    pub fn unital_deviation(&self) -> f64 {
        if self.dim_in != self.dim_out {
            return f64::INFINITY;
        }
        let mut sum = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            sum = sum
                .add(&k.matmul(&k.adjoint()).expect("square"))
                .expect("shape");
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim_out))
    }

    /// Whether `Σ K K† = I` within [`tol::UNITAL`].
    pub fn is_unital(&self) -> bool {
        self.unital_deviation() <= tol::UNITAL
    }

    /// Hilbert-Schmidt adjoint, defined for square unital channels only:
    /// the Kraus set `{K†}`.
    pub fn adjoint(&self) -> Result<Channel> {
        if self.dim_in != self.dim_out {
            return Err(Error::NotSquare { rows: self.dim_out, cols: self.dim_in });
        }
        let deviation = self.unital_deviation();
        if deviation > tol::UNITAL {
            return Err(Error::NotUnital { deviation });
        }
        let kraus = self.kraus.iter().map(|k| k.adjoint()).collect();
        Ok(Channel { dim_in: self.dim_out, dim_out: self.dim_in, kraus })
    }

    /// Choi matrix `Σ_k vec(K_k) vec(K_k)†` with row-major vectorization;
    /// positive semidefinite by construction.
    pub fn choi(&self) -> ComplexMatrix {
        let d = self.dim_in * self.dim_out;
        let mut c = ComplexMatrix::zeros(d, d);
        for k in &self.kraus {
            let v: Vec<Complex64> = k.entries().to_vec();
            c = c.add(&ComplexMatrix::outer(&v)).expect("shape");
        }
        c
    }
}

/// POVM measurement: effects in `[0, I]` summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    dim: usize,
    effects: Vec<ComplexMatrix>,
}

impl Measurement {
    pub fn new(dim: usize, effects: Vec<ComplexMatrix>) -> Result<Self> {
        if effects.is_empty() {
            return Err(Error::EmptyKraus);
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for a in &effects {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.rows() });
            }
            let deviation = a.hermitian_deviation();
            if deviation > tol::HERM {
                return Err(Error::NotHermitian { deviation });
            }
            let dec = eig_hermitian(a)?;
            if dec.min_eigenvalue() < -tol::PD {
                return Err(Error::EffectOutOfRange { eigenvalue: dec.min_eigenvalue() });
            }
            if dec.max_eigenvalue() > 1.0 + tol::PD {
                return Err(Error::EffectOutOfRange { eigenvalue: dec.max_eigenvalue() });
            }
            sum = sum.add(a)?;
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > tol::EFFECT_SUM {
            return Err(Error::EffectSumNotIdentity { deviation });
        }
        Ok(Self { dim, effects })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    /// Projective measurement in the computational basis.
    pub fn computational(dim: usize) -> Self {
        let effects = (0..dim)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(dim, dim);
                p.set(k, k, Complex64::ONE);
                p
            })
            .collect();
        Self { dim, effects }
    }

    /// Born probabilities `tr(A_k ρ)`.
    pub fn born(&self, rho: &State) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rho.dim() });
        }
        self.effects
            .iter()
            .map(|a| Ok(a.matmul(rho.matrix())?.trace().re))
            .collect()
    }
}

/// Complex matrix with iid standard-complex-Gaussian entries.
pub(crate) fn gaussian_complex(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let inv_sqrt2 = 1.0 / 2.0.sqrt();
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re * inv_sqrt2, im * inv_sqrt2)
    })
}

/// Haar-random unitary via QR of a complex Gaussian matrix with the usual
/// phase correction on the R diagonal.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = gaussian_complex(dim, dim, rng);
    let qr = g.to_na().qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = ComplexMatrix::from_na(&q);
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::ONE };
        for i in 0..dim {
            u.set(i, j, u.get(i, j) * phase);
        }
    }
    u
}

/// Haar-random unitary from a seed.
pub fn haar_unitary_seeded(dim: usize, seed: u64) -> ComplexMatrix {
    haar_unitary(dim, &mut rng_from_seed(seed))
}

/// Random density matrix `G G† / tr(G G†)`, deterministic in the seed.
pub fn random_state(dim: usize, seed: u64) -> Result<State> {
    let mut rng = rng_from_seed(seed);
    random_state_rng(dim, &mut rng)
}

pub(crate) fn random_state_rng(dim: usize, rng: &mut impl Rng) -> Result<State> {
    let g = gaussian_complex(dim, dim, rng);
    let gg = g.matmul(&g.adjoint())?;
    let trace = gg.trace().re;
    State::new(gg.scale_re(1.0 / trace))
}

/// Random CPTP map built from a Haar-random isometry into
/// `dim_out × kraus_count`, obtained by thin QR of a complex Gaussian matrix.
/// Deterministic in the seed.
pub fn random_channel(
    dim_in: usize,
    dim_out: usize,
    kraus_count: usize,
    seed: u64,
) -> Result<Channel> {
    let mut rng = rng_from_seed(seed);
    random_channel_rng(dim_in, dim_out, kraus_count, &mut rng)
}

pub(crate) fn random_channel_rng(
    dim_in: usize,
    dim_out: usize,
    kraus_count: usize,
    rng: &mut impl Rng,
) -> Result<Channel> {
    if kraus_count == 0 {
        return Err(Error::EmptyKraus);
    }
    let stacked = dim_out * kraus_count;
    if stacked < dim_in {
        return Err(Error::KrausRankDeficient { needed: dim_in, available: stacked });
    }
    let g = gaussian_complex(stacked, dim_in, rng);
    let qr = g.to_na().qr();
    let q = qr.q();
    let r = qr.r();
    // phase-correct so the isometry is Haar distributed
    let mut iso = ComplexMatrix::from_na(&q);
    for j in 0..dim_in {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::ONE };
        for i in 0..stacked {
            iso.set(i, j, iso.get(i, j) * phase);
        }
    }
    let kraus = (0..kraus_count)
        .map(|b| {
            ComplexMatrix::from_fn(dim_out, dim_in, |i, j| iso.get(b * dim_out + i, j))
        })
        .collect();
    Channel::new(dim_in, dim_out, kraus)
}

/// Random unital channel: a uniform mixture of `terms` Haar unitary
/// conjugations. Unitality holds exactly by construction.
pub fn random_unital_channel(dim: usize, terms: usize, seed: u64) -> Channel {
    let mut rng = rng_from_seed(seed);
    let terms = terms.max(1);
    let w = (1.0 / terms as f64).sqrt();
    let kraus = (0..terms)
        .map(|_| haar_unitary(dim, &mut rng).scale_re(w))
        .collect();
    Channel { dim_in: dim, dim_out: dim, kraus }
}

/// Random pure-state vector (normalized Gaussian), deterministic in the seed.
pub fn random_pure_vector(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = rng_from_seed(trial_seed(seed, 0));
    random_pure_vector_rng(dim, &mut rng)
}

pub(crate) fn random_pure_vector_rng(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let g = gaussian_complex(dim, 1, rng);
        let norm: f64 = g.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return g.entries().iter().map(|z| z / norm).collect();
        }
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;

    #[test]
    fn state_validation_rejects_bad_traces_and_negativity() {
        let double = ComplexMatrix::identity(2);
        assert!(matches!(State::new(double), Err(Error::TraceNotOne { .. })));

        let indefinite = ComplexMatrix::from_diag(&[1.5, -0.5]);
        assert!(matches!(State::new(indefinite), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn dimension_one_state_is_the_scalar_one() {
        let s = random_state(1, 3).unwrap();
        assert!((s.matrix().get(0, 0) - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn random_states_are_valid() {
        for seed in 0..5 {
            let s = random_state(3, seed).unwrap();
            assert_eq!(s.dim(), 3);
            assert!((s.matrix().trace().re - 1.0).abs() < 1e-12);
            let dec = eig_hermitian(s.matrix()).unwrap();
            assert!(dec.min_eigenvalue() >= -1e-12);
        }
    }

    #[test]
    fn identity_channel_fixes_states() {
        let rho = random_state(2, 11).unwrap();
        let out = Channel::identity(2).apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn fully_depolarizing_sends_everything_to_the_mixed_state() {
        let phi = Channel::depolarizing(2, 1.0).unwrap();
        let out = phi.apply(&ket0()).unwrap();
        assert!(out.matrix().max_abs_diff(State::maximally_mixed(2).matrix()) < 1e-13);
    }

    #[test]
    fn hadamard_maps_ket0_to_plus() {
        let phi = Channel::from_unitary(hadamard()).unwrap();
        let out = phi.apply(&ket0()).unwrap();
        let plus = ComplexMatrix::identity(2).add(&sigma_x()).unwrap().scale_re(0.5);
        assert!(out.matrix().max_abs_diff(&plus) < 1e-14);
    }

    #[test]
    fn composition_with_identity_is_identity() {
        let phi = random_channel(2, 3, 2, 5).unwrap();
        let left = Channel::identity(3).compose(&phi).unwrap();
        let rho = random_state(2, 17).unwrap();
        assert!(left.apply(&rho).unwrap().matrix().max_abs_diff(phi.apply(&rho).unwrap().matrix()) < 1e-12);
    }

    #[test]
    fn unitary_compose_with_inverse_is_identity_action() {
        let u = haar_unitary_seeded(3, 23);
        let fwd = Channel::from_unitary(u.clone()).unwrap();
        let back = Channel::from_unitary(u.adjoint()).unwrap();
        let both = back.compose(&fwd).unwrap();
        let rho = random_state(3, 29).unwrap();
        assert!(both.apply(&rho).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn depolarizing_composition_contracts_bloch_vectors() {
        // contraction factors multiply: two λ=0.5 channels act like contraction 0.25
        let half = Channel::depolarizing(2, 0.5).unwrap();
        let both = half.compose(&half).unwrap();
        let rho = random_state(2, 31).unwrap();
        let out = both.apply(&rho).unwrap();
        let expected = rho
            .matrix()
            .scale_re(0.25)
            .add(&ComplexMatrix::identity(2).scale_re(0.75 * 0.5))
            .unwrap();
        assert!(out.matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn tensor_of_identities_acts_as_identity() {
        let t = Channel::identity(2).tensor(&Channel::identity(2));
        let rho = random_state(4, 37).unwrap();
        assert!(t.apply(&rho).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn tensor_acts_factorwise_on_product_states() {
        let u = haar_unitary_seeded(2, 41);
        let v = haar_unitary_seeded(2, 43);
        let phi = Channel::from_unitary(u).unwrap();
        let psi = Channel::from_unitary(v).unwrap();
        let rho = random_state(2, 47).unwrap();
        let sigma = random_state(2, 53).unwrap();
        let joint = phi.tensor(&psi).apply(&rho.tensor(&sigma)).unwrap();
        let separate = phi.apply(&rho).unwrap().tensor(&psi.apply(&sigma).unwrap());
        assert!(joint.matrix().max_abs_diff(separate.matrix()) < 1e-12);
    }

    #[test]
    fn depolarizing_partial_of_bell_state_is_maximally_mixed() {
        let bell = State::pure(&[
            Complex64::new(1.0 / 2.0f64.sqrt(), 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(1.0 / 2.0f64.sqrt(), 0.0),
        ])
        .unwrap();
        let phi = Channel::depolarizing(2, 1.0).unwrap().tensor(&Channel::identity(2));
        let out = phi.apply(&bell).unwrap();
        assert!(out.matrix().max_abs_diff(State::maximally_mixed(4).matrix()) < 1e-13);
    }

    #[test]
    fn unitary_channels_are_unital_and_damping_is_not() {
        let u = Channel::from_unitary(haar_unitary_seeded(2, 59)).unwrap();
        assert!(u.is_unital());
        assert!(Channel::depolarizing(2, 1.0).unwrap().is_unital());

        let damp = Channel::amplitude_damping(0.5).unwrap();
        // Σ K K† = diag(1+γ, 1-γ)
        assert!(!damp.is_unital());
        assert!((damp.unital_deviation() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn adjoint_of_unitary_conjugation_is_inverse_conjugation() {
        let u = haar_unitary_seeded(2, 61);
        let phi = Channel::from_unitary(u.clone()).unwrap();
        let adj = phi.adjoint().unwrap();
        assert!(adj.kraus()[0].max_abs_diff(&u.adjoint()) < 1e-14);
    }

    #[test]
    fn adjoint_is_an_involution_on_unital_channels() {
        let phi = random_unital_channel(2, 3, 67);
        let back = phi.adjoint().unwrap().adjoint().unwrap();
        let rho = random_state(2, 71).unwrap();
        assert!(back.apply(&rho).unwrap().matrix().max_abs_diff(phi.apply(&rho).unwrap().matrix()) < 1e-12);
    }

    #[test]
    fn adjoint_rejects_non_unital_channels() {
        let damp = Channel::amplitude_damping(0.5).unwrap();
        assert!(matches!(damp.adjoint(), Err(Error::NotUnital { .. })));
    }

    #[test]
    fn adjoint_is_the_hilbert_schmidt_dual() {
        use crate::matrix::hs_inner;
        let phi = random_unital_channel(3, 3, 73);
        let adj = phi.adjoint().unwrap();
        for seed in 0..5 {
            let a = random_hermitian(3, 100 + seed);
            let b = random_hermitian(3, 200 + seed);
            let lhs = hs_inner(&phi.apply_raw(&a).unwrap(), &b).unwrap();
            let rhs = hs_inner(&a, &adj.apply_raw(&b).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn single_kraus_random_channel_is_unitary() {
        let phi = random_channel(2, 2, 1, 79).unwrap();
        let k = &phi.kraus()[0];
        let prod = k.adjoint().matmul(k).unwrap();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn random_channels_are_trace_preserving_and_choi_positive() {
        for seed in 0..5 {
            let phi = random_channel(2, 3, 4, seed).unwrap();
            let rho = random_state(2, 1000 + seed).unwrap();
            let out = phi.apply(&rho).unwrap();
            assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);

            let choi = phi.choi();
            let dec = eig_hermitian(&choi).unwrap();
            assert!(dec.min_eigenvalue() >= -1e-10);
        }
    }

    #[test]
    fn random_channel_rejects_impossible_shapes() {
        assert!(matches!(
            random_channel(4, 2, 1, 0),
            Err(Error::KrausRankDeficient { .. })
        ));
    }

    #[test]
    fn random_generation_is_deterministic_in_the_seed() {
        assert_eq!(random_state(3, 5).unwrap(), random_state(3, 5).unwrap());
        assert_eq!(
            random_channel(2, 2, 3, 5).unwrap(),
            random_channel(2, 2, 3, 5).unwrap()
        );
    }

    #[test]
    fn measurement_validation_and_born_rule() {
        let z = Measurement::computational(2);
        let probs = z.born(&ket0()).unwrap();
        assert!((probs[0] - 1.0).abs() < 1e-14);
        assert!(probs[1].abs() < 1e-14);

        let bad = Measurement::new(2, alloc::vec![ComplexMatrix::identity(2).scale_re(2.0)]);
        assert!(bad.is_err());
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        for seed in 0..4 {
            let u = haar_unitary_seeded(3, seed);
            let prod = u.adjoint().matmul(&u).unwrap();
            assert!(prod.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
        }
    }
}
