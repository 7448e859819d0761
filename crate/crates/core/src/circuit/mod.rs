//! Closed-form circuit constants: capacitance algebra, derived frequencies
//! and couplings, the four-body coupling constant and the effective
//! Hamiltonian coefficients.

mod capacitance;
mod derived;
mod effective;
pub mod expansion;
mod params;
mod sample;

pub use capacitance::{
    capacitance_matrix, inverse_capacitance_analytic, inverse_capacitance_numeric,
    InverseCapacitance,
};
pub use derived::{
    derived_constants, gamma4, nonlinearity_ratio, solve_ejg_for_omega, CouplerSolution,
    DerivedConstants, Gamma4,
};
pub use effective::{effective_constants, EffectiveConstants, CHI_PAIRS};
pub use expansion::{ExpansionSet, ExpansionTerm};
pub use params::{CircuitParams, CouplerTuning, JpoSpec, DEFAULT_PUMP_RATIO};
pub use sample::random_circuits;

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("resonance singularity: denominator `{denominator}` vanishes")]
    Resonance { denominator: &'static str },
    #[error("quarton pole: alpha = 1/n for n = {n}")]
    QuartonPole { n: u32 },
    #[error("unphysical branch: 1/n - alpha = {value} is not positive")]
    UnphysicalBranch { value: f64 },
    #[error("no coupler solution: {0}")]
    NoSolution(String),
    #[error("capacitance matrix is singular")]
    SingularMatrix,
}

/// Soft warnings: the perturbative treatment is only qualitatively valid.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    StrongCoupling { ratio: f64 },
    LargeGPrime { branch: char, value: f64 },
    StrongPump { ratio: f64 },
    Decoupled,
}

pub const COUPLING_RATIO_WARN: f64 = 0.05;
pub const G_PRIME_WARN: f64 = 0.35;
pub const PUMP_RATIO_WARN: f64 = 0.1;

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::StrongCoupling { ratio } => {
                write!(f, "C/C_J = {ratio:.4} exceeds {COUPLING_RATIO_WARN}")
            }
            Warning::LargeGPrime { branch, value } => {
                write!(
                    f,
                    "|g'_{branch}| = {:.4} exceeds {G_PRIME_WARN}",
                    value.abs()
                )
            }
            Warning::StrongPump { ratio } => {
                write!(
                    f,
                    "delta_E_J/E_J_sigma = {ratio:.4} exceeds {PUMP_RATIO_WARN}"
                )
            }
            Warning::Decoupled => write!(f, "C = 0: JPOs decoupled from the coupler, gamma4 = 0"),
        }
    }
}

impl Warning {
    pub fn code(&self) -> &'static str {
        match self {
            Warning::StrongCoupling { .. } => "strong_coupling",
            Warning::LargeGPrime { branch: '+', .. } => "large_g_prime_plus",
            Warning::LargeGPrime { .. } => "large_g_prime_minus",
            Warning::StrongPump { .. } => "strong_pump",
            Warning::Decoupled => "decoupled",
        }
    }
}

impl CircuitError {
    pub fn code(&self) -> &'static str {
        match self {
            CircuitError::InvalidParameter { .. } => "invalid_parameter",
            CircuitError::Resonance { .. } => "resonance",
            CircuitError::QuartonPole { .. } => "quarton_pole",
            CircuitError::UnphysicalBranch { .. } => "unphysical_branch",
            CircuitError::NoSolution(_) => "no_solution",
            CircuitError::SingularMatrix => "singular_matrix",
        }
    }
}
