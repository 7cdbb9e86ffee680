//! Invariant function spaces of finite transitive group actions.
//!
//! Functions on a finite set `X` acted on transitively by a permutation group
//! `G` decompose into minimal invariant subspaces. This crate computes that
//! decomposition and checks, numerically, the structure around it:
//!
//! * [`perm_action`]: groups from permutation generators, stabilizers, orbitals.
//! * [`linalg`]: Hermitian eigenproblems, orthonormal bases, subspace algebra.
//! * [`decomposition`]: commutant, minimal spaces, `H(x)` and the star table.
//! * [`kernels`]: reproducing kernels of invariant subspaces.
//! * [`schur`]: group averaging and the scalar/zero dichotomy for intertwiners.
//! * [`invariant_subspaces`]: every invariant subspace as a sum of minimal ones.
//! * [`torus`]: the same picture for trigonometric polynomials on `T^n`.
//! * [`report`]: the JSON/CSV reports behind the `ginv` binary.

pub mod decomposition;
pub mod error;
pub mod invariant_subspaces;
pub mod kernels;
pub mod linalg;
pub mod perm_action;
pub mod report;
pub mod schur;
pub mod torus;

pub use error::{Error, Result};
