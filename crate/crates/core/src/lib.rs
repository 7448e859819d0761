//! Circuit constants, exact operator algebra and a truncated Fock-space
//! oracle for a capacitively coupled four-body coupler between Josephson
//! parametric oscillators.

pub mod algebra;
pub mod circuit;
pub mod constants;
pub mod fock;
pub mod symbols;

pub use circuit::{
    capacitance_matrix, derived_constants, effective_constants, gamma4,
    inverse_capacitance_analytic, inverse_capacitance_numeric, nonlinearity_ratio, random_circuits,
    solve_ejg_for_omega, CircuitError, CircuitParams, CouplerSolution, CouplerTuning,
    DerivedConstants, EffectiveConstants, ExpansionSet, Gamma4, InverseCapacitance, JpoSpec,
    Warning,
};
pub use symbols::{CoefficientName, Param, ParamValues};
