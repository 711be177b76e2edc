//! Continuous-time quantum walks on the weighted Hamming graph `G1 ∪ G2`
//! and the one-excitation dynamics of the next-to-nearest-neighbour
//! Krawtchouk spin chain.
//!
//! The graph Hamiltonian on `{0,1}^M` is `(α/2)·A2 + (β/2)·A1`. Both
//! adjacency operators are diagonalised by the Walsh–Hadamard transform, so
//! evolution costs `O(M·2^M)`. Projecting onto the column space spanned by
//! the distance shells around the corner `(0,…,0)` reproduces the chain
//! operator `αJ² + βJ` up to a constant energy shift.
//!
//! Modules:
//! - [`scheme`]: the binary Hamming scheme, adjacency actions and
//!   intersection numbers.
//! - [`kraw`]: Krawtchouk polynomials and the analytic graph spectrum.
//! - [`chain`]: the pentadiagonal chain operator and dense evolution.
//! - [`walk`]: the transform-based graph propagator and a dense oracle.
//! - [`quotient`]: column-space projection and graph/chain equivalence.
//! - [`revival`]: arithmetic revival conditions and numeric certification.
//! - [`cli`]: the command-line front end.

pub mod chain;
pub mod cli;
mod error;
pub mod kraw;
pub mod quotient;
pub mod revival;
pub mod scheme;
mod spectral;
mod state;
pub mod walk;

pub use error::{Error, Result};
pub use state::AmplitudeVector;

pub use num_complex::Complex64;
