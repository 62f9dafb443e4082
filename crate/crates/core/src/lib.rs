//! Exact density-matrix simulation of a coherent two-qubit Otto engine.
//!
//! A spin-1/2 working medium (the motor) is reset by a coherent hot bath and a
//! cold bath, and between resets it exchanges excitations with a spin-1/2
//! battery through a flip-flop power stroke. The crate provides:
//!
//! - [`smallmat`]: dense complex linear algebra for dimensions up to 16,
//!   including an in-house cyclic Jacobi eigensolver.
//! - [`engine`]: state preparation, the power-stroke propagator, bath resets
//!   and the closed-form single-cycle work.
//! - [`diagnostics`]: polarizations, correlators, entropies, ergotropy with its
//!   coherent/incoherent split, and the Wootters concurrence.
//! - [`multicycle`]: N-cycle trajectories with phenomenological dephasing,
//!   coherent-vs-incoherent comparison and parameter sweeps.
//!
//! # Conventions
//!
//! Two-qubit operators act on `medium ⊗ battery`, in the basis
//! `|00⟩, |01⟩, |10⟩, |11⟩` (medium label first). `|0⟩` is the `+1`
//! eigenstate of `σ^z` and is the excited level (energy `+ħω/2`); `|1⟩` is the
//! ground level. Single-qubit states are parameterized as `ρ = ½I + P⃗·σ⃗`, so
//! the polarization vector lives in a ball of radius ½. Energies are reported
//! with `ħ = 1`; the engine reports work in units of `ħω_B`.

pub mod diagnostics;
pub mod engine;
pub mod multicycle;
pub mod smallmat;
pub mod state;
pub mod tolerance;

pub use diagnostics::{CorrelatorSet, ErgotropyReport};
pub use engine::{EngineConfig, WorkBreakdown};
pub use multicycle::{CycleRecord, EngineTrace, NoiseConfig};
pub use num_complex::Complex64;
pub use smallmat::{ComplexMatrix, EigenDecomposition};
pub use smallmat::Subsystem;
pub use state::{DensityOperator, PolarizationVector};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionLimit { dim: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NotConverged { sweeps: usize, off_norm: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown or non-sweepable field `{0}`")]
    UnknownField(String),
}

pub type Result<T> = std::result::Result<T, Error>;
