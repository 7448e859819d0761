use super::expansion::{evaluate, expansion, ExpansionSet};
use super::{derived_constants, CircuitError, CircuitParams};
use crate::symbols::CoefficientName;

/// Effective-Hamiltonian coefficients (rad/s), pair order for `chi` is
/// 12, 13, 14, 23, 24, 34.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveConstants {
    pub delta: [f64; 4],
    pub k_prime: f64,
    pub pump_amplitude: f64,
    pub gamma4: f64,
    pub chi: [f64; 6],
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub k_prime_plus: f64,
    pub k_prime_minus: f64,
    pub gamma2_j_plus: f64,
    pub gamma2_j_minus: f64,
    pub gamma2_plus_minus: f64,
    pub fourbody_phase: f64,
}

pub const CHI_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl EffectiveConstants {
    pub fn get(&self, name: CoefficientName) -> f64 {
        match name {
            CoefficientName::Delta(k) => self.delta[k],
            CoefficientName::KPrime => self.k_prime,
            CoefficientName::PumpAmplitude => self.pump_amplitude,
            CoefficientName::DeltaPlus => self.delta_plus,
            CoefficientName::DeltaMinus => self.delta_minus,
            CoefficientName::KPrimePlus => self.k_prime_plus,
            CoefficientName::KPrimeMinus => self.k_prime_minus,
            CoefficientName::Gamma4 => self.gamma4,
            CoefficientName::Chi(k, l) => {
                let idx = CHI_PAIRS.iter().position(|&p| p == (k.min(l), k.max(l)));
                self.chi[idx.expect("distinct JPO pair")]
            }
            CoefficientName::Gamma2JPlus => self.gamma2_j_plus,
            CoefficientName::Gamma2JMinus => self.gamma2_j_minus,
            CoefficientName::Gamma2PlusMinus => self.gamma2_plus_minus,
        }
    }
}

pub fn effective_constants(
    params: &CircuitParams,
    set: ExpansionSet,
) -> Result<EffectiveConstants, CircuitError> {
    let d = derived_constants(params)?;
    let values = d.param_values();
    let eval = |name| evaluate(&expansion(set, name), &values);
    use CoefficientName::*;
    Ok(EffectiveConstants {
        delta: [
            eval(Delta(0)),
            eval(Delta(1)),
            eval(Delta(2)),
            eval(Delta(3)),
        ],
        k_prime: eval(KPrime),
        pump_amplitude: eval(PumpAmplitude),
        gamma4: eval(Gamma4),
        chi: CHI_PAIRS.map(|(k, l)| eval(Chi(k, l))),
        delta_plus: eval(DeltaPlus),
        delta_minus: eval(DeltaMinus),
        k_prime_plus: eval(KPrimePlus),
        k_prime_minus: eval(KPrimeMinus),
        gamma2_j_plus: eval(Gamma2JPlus),
        gamma2_j_minus: eval(Gamma2JMinus),
        gamma2_plus_minus: eval(Gamma2PlusMinus),
        fourbody_phase: params.fourbody_phase(),
    })
}
