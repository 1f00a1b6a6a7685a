//! Continuity bounds for Shannon, von Neumann, Rényi and Tsallis entropies
//! under mean and energy constraints.
//!
//! The crate is organised bottom-up:
//!
//! - [`dist`]: distributions on ℕ₀, entropies, total variation, maximal coupling.
//! - [`classical`]: mean-constrained Fano and Shannon bounds, their extremal
//!   witnesses, and Rényi/Tsallis bounds for probability vectors and gridded densities.
//! - [`linalg`] / [`quantum`]: density matrices in a truncated Fock basis and
//!   the spectral machinery (Jacobi eigensolver, Schatten norms, fidelity).
//! - [`qbounds`]: von Neumann, Winter comparison, approximation-scheme
//!   Rényi/Tsallis, `α > 1` and moment bounds.
//! - [`fa`]: numerics for states of finite entropy that fail the
//!   finite-dimensional approximation property.
//!
//! Entropies are computed in nats. [`LogBase`] rescales log-homogeneous
//! reports.

pub mod classical;
pub mod dist;
pub mod error;
pub mod fa;
pub mod linalg;
mod log_base;
pub mod modulus;
pub mod qbounds;
pub mod quantum;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod series;

pub use dist::{binary_entropy, total_variation, DiscreteDistribution, JointDistribution, WeightSequence};
pub use error::{Error, Result};
pub use log_base::LogBase;
pub use report::{BoundKind, BoundReport};
