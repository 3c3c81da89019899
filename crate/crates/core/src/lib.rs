//! Coherent information of permutation-invariant quantum codes.
//!
//! A code on `n` channel inputs is a convex mixture of i.i.d. states,
//! `rho_(n) = sum_i x_i rho_i^{⊗n}`. Such states and their channel outputs are
//! block diagonal in the Schur-Weyl decomposition of `(C^d)^{⊗n}`, so every
//! entropy reduces to a sum over Young diagrams `λ` of entropies of small
//! matrices acting on `GL(d)` irreps `V_λ^d`. Irrep dimensions grow
//! polynomially in `n`, which makes hundreds of channel copies tractable.
//!
//! Module map:
//!
//! - [`rep`]: partitions, Gelfand-Tsetlin patterns, Schur polynomials and
//!   numeric irrep matrices `q_λ(A)`.
//! - [`channel`]: Kraus channels used throughout, their linear action and
//!   complementary channels.
//! - [`state`]: density matrices and code ensembles.
//! - [`coherent`]: the block-decomposed coherent-information evaluators and a
//!   brute-force tensor-product oracle.
//! - [`analytic`]: closed forms for weighted repetition codes, hashing bound and
//!   Pauli antidegradability.
//! - [`optim`]: particle swarm optimization, state parametrizations,
//!   threshold bisection and the Pauli simplex scan.
//! - [`codes`]: the code file format and bundled benchmark codes.

pub mod analytic;
pub mod channel;
pub mod codes;
pub mod coherent;
mod error;
pub mod linalg;
pub mod optim;
pub mod rep;
pub mod state;

pub use channel::{ChannelKind, ChannelSpec, KrausChannel};
pub use coherent::{CIBreakdown, Formula};
pub use error::{Error, Result};
pub use rep::Partition;
pub use state::{CodeEnsemble, DensityMatrix};

pub use num_complex::Complex64;
