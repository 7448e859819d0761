//! Exact symbolic algebra over normal-ordered six-mode bosonic polynomials.

pub mod coefficient;
pub mod derivation;
pub mod expr;
pub mod hamiltonian;
pub mod monomial;
pub mod phase;
pub mod scalar;
pub mod transform;

pub use coefficient::{CoeffMonomial, GradedCoefficient};
pub use derivation::{
    derive_effective_hamiltonian, determine_g_primes, project_coupler_vacuum, Branch,
    CoefficientComparison, Derivation, DropReason, GPrimeDetermination, RationalForm,
    ResidualFamily, ResidualTerm,
};
pub use expr::{
    commutator, extract_coefficient, multiply, AlgebraConfig, OperatorExpr, OverflowPolicy,
};
pub use monomial::{Mode, ModeMonomial};
pub use phase::PhaseTag;
pub use scalar::Scalar;
pub use transform::{bch_conjugate, rotate_frame, rwa_filter};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("monomial degree {degree} exceeds the cap {max}")]
    DegreeOverflow { degree: u32, max: u32 },
    #[error("requested order {order} exceeds the configured g'-order {max}")]
    OrderTooHigh { order: u8, max: u8 },
    #[error("internal consistency: {0}")]
    InternalConsistency(String),
    #[error("derivation regression in `{coefficient}`: derived {derived}, expected {expected}")]
    DerivationRegression {
        coefficient: String,
        derived: String,
        expected: String,
    },
}
