//! Truncated Fock-space oracle: dense representations, exact conjugation by
//! e^S, coefficient fitting and the verification runs built on them.

mod config;
mod conjugate;
mod dense;
pub mod expm;
mod fit;
mod space;
mod verify;

pub use config::FockConfig;
pub use conjugate::{conjugate_exact, conjugate_sectors, exponentiate_generator, SectorUnitary};
pub use dense::{represent, represent_frozen, DenseOperator};
pub use fit::{channel, coefficient_fit, FitResult};
pub use space::FockSpace;
pub use verify::{
    coherent_residual, coherent_residual_check, kerr_pump_matrix_element, oracle_values,
    verify_effective_hamiltonian, verify_four_body, verify_symbolic_engine, EffectiveCheck,
    EngineReport, FourBodyConfig, FourBodyReport, FourBodyRun, ModeSet,
};

use thiserror::Error;

use crate::algebra::{AlgebraError, Mode};
use crate::circuit::CircuitError;
use crate::symbols::Param;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("invalid Fock configuration: {0}")]
    InvalidConfig(String),
    #[error("Hilbert-space dimension {dim} exceeds the bound {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("mode {0:?} is not active in this configuration")]
    InactiveMode(Mode),
    #[error("no numeric value supplied for parameter `{0}`")]
    MissingParameter(Param),
    #[error("term carries a time-dependent phase tag; freeze it first")]
    NonZeroTag,
    #[error("generator is not anti-Hermitian (deviation {deviation:e})")]
    NotAntiHermitian { deviation: f64 },
    #[error("exponential is not unitary (residual {residual:e})")]
    NonUnitary { residual: f64 },
    #[error("ill-posed fit: rank {rank} for {basis} basis monomials on the safe subspace")]
    IllPosedFit { rank: usize, basis: usize },
    #[error("truncation failure: coefficient shifted by {shift:e} (tolerance {tolerance:e}) from d to d+1")]
    TruncationFailure { shift: f64, tolerance: f64 },
    #[error("coherent state |{amplitude}> keeps weight {weight:e} above the cutoff")]
    CoherentTruncation { amplitude: f64, weight: f64 },
    #[error("engine regression (seed {seed}, trial {trial}): {detail}")]
    EngineRegression {
        seed: u64,
        trial: usize,
        detail: String,
    },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
