#![no_std]
#![deny(unsafe_code)]

//! Quasi-stochastic matrix representations of finite-dimensional quantum theory.
//!
//! A minimal informationally complete (IC) POVM on each Hilbert-space dimension
//! turns density matrices into quasi-probability vectors, channels into
//! quasi-stochastic matrices, and measurements into classical post-processing
//! maps. This crate builds those representations and verifies their structural
//! laws — composition through the transition matrix, tensor coherence,
//! naturality between different POVM choices, transpose/adjoint compatibility
//! for symmetric families, and the trivial-or-faithful dichotomy — as seeded,
//! reproducible numerical property checks.
//!
//! Module map:
//!
//! * [`matrix`] — dense complex/real matrices, Hermitian eigendecomposition,
//!   pseudo-inverse, Kronecker products.
//! * [`quantum`] — states, Kraus channels, measurements, seeded random
//!   instances.
//! * [`povm`] — the quasi-POVM catalog: SIC families, random minimal ICs,
//!   trivial and Hermitian-basis families.
//! * [`rep`] — transition matrices, the representation of states, channels and
//!   measurements, star composition, coherence and naturality matrices.
//! * [`verify`] — the structural laws packaged as pass/fail reports with
//!   residuals.
//!
//! The crate is `no_std` (with `alloc`); all IO, JSON schemas, and the CLI live
//! in the companion crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod matrix;
pub mod povm;
pub mod quantum;
pub mod rep;
pub mod seeding;
pub mod tol;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
