//! Parameter symbols shared by the numeric circuit model and the symbolic
//! operator algebra.

use std::fmt;

/// Formal parameter symbols appearing in effective-Hamiltonian coefficients.
/// The small couplings g'_+ and g'_- are graded separately and are not listed
/// here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Omega,
    Kerr,
    Pump,
    OmegaPlus,
    OmegaMinus,
    KerrMinus,
    GPlus,
    GMinus,
    PumpFreq(usize),
}

pub const PARAM_COUNT: usize = 12;

impl Param {
    pub const ALL: [Param; PARAM_COUNT] = [
        Param::Omega,
        Param::Kerr,
        Param::Pump,
        Param::OmegaPlus,
        Param::OmegaMinus,
        Param::KerrMinus,
        Param::GPlus,
        Param::GMinus,
        Param::PumpFreq(0),
        Param::PumpFreq(1),
        Param::PumpFreq(2),
        Param::PumpFreq(3),
    ];

    pub fn index(self) -> usize {
        match self {
            Param::Omega => 0,
            Param::Kerr => 1,
            Param::Pump => 2,
            Param::OmegaPlus => 3,
            Param::OmegaMinus => 4,
            Param::KerrMinus => 5,
            Param::GPlus => 6,
            Param::GMinus => 7,
            Param::PumpFreq(k) => {
                assert!(k < 4, "pump index out of range");
                8 + k
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            Param::Omega => "w".into(),
            Param::Kerr => "K".into(),
            Param::Pump => "p".into(),
            Param::OmegaPlus => "w+".into(),
            Param::OmegaMinus => "w-".into(),
            Param::KerrMinus => "K-".into(),
            Param::GPlus => "g+".into(),
            Param::GMinus => "g-".into(),
            Param::PumpFreq(k) => format!("wp{}", k + 1),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Numeric values for every parameter symbol plus the two graded couplings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamValues {
    pub omega: f64,
    pub kerr: f64,
    pub pump: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub kerr_minus: f64,
    pub g_plus: f64,
    pub g_minus: f64,
    pub pump_freqs: [f64; 4],
    pub g_prime_plus: f64,
    pub g_prime_minus: f64,
}

impl ParamValues {
    /// Every parameter unset (NaN); g' couplings zero.
    pub fn unset() -> Self {
        ParamValues {
            omega: f64::NAN,
            kerr: f64::NAN,
            pump: f64::NAN,
            omega_plus: f64::NAN,
            omega_minus: f64::NAN,
            kerr_minus: f64::NAN,
            g_plus: f64::NAN,
            g_minus: f64::NAN,
            pump_freqs: [f64::NAN; 4],
            g_prime_plus: 0.0,
            g_prime_minus: 0.0,
        }
    }

    pub fn value(&self, param: Param) -> f64 {
        match param {
            Param::Omega => self.omega,
            Param::Kerr => self.kerr,
            Param::Pump => self.pump,
            Param::OmegaPlus => self.omega_plus,
            Param::OmegaMinus => self.omega_minus,
            Param::KerrMinus => self.kerr_minus,
            Param::GPlus => self.g_plus,
            Param::GMinus => self.g_minus,
            Param::PumpFreq(k) => self.pump_freqs[k],
        }
    }
}

/// Named coefficients of the effective Hamiltonian.
///
/// Sign conventions follow the effective Hamiltonian
/// `sum_k [Delta_k n_k - K'/2 a_k^2† a_k^2 + pump/2 (a_k^2 + h.c.)]
///  + Delta_± n_± - K'_±/2 a_±^2† a_±^2 - gamma4 (a1† a2† a3 a4 + h.c.)
///  - sum_{k<l} chi_kl n_k n_l - gamma2_J± sum_k n_k n_± - gamma2_+- sum_k n_+ n_-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoefficientName {
    Delta(usize),
    KPrime,
    PumpAmplitude,
    DeltaPlus,
    DeltaMinus,
    KPrimePlus,
    KPrimeMinus,
    Gamma4,
    Chi(usize, usize),
    Gamma2JPlus,
    Gamma2JMinus,
    Gamma2PlusMinus,
}

impl CoefficientName {
    pub fn all() -> Vec<CoefficientName> {
        let mut out: Vec<CoefficientName> = (0..4).map(CoefficientName::Delta).collect();
        out.extend([
            CoefficientName::KPrime,
            CoefficientName::PumpAmplitude,
            CoefficientName::DeltaPlus,
            CoefficientName::DeltaMinus,
            CoefficientName::KPrimePlus,
            CoefficientName::KPrimeMinus,
            CoefficientName::Gamma4,
        ]);
        for k in 0..4 {
            for l in k + 1..4 {
                out.push(CoefficientName::Chi(k, l));
            }
        }
        out.extend([
            CoefficientName::Gamma2JPlus,
            CoefficientName::Gamma2JMinus,
            CoefficientName::Gamma2PlusMinus,
        ]);
        out
    }

    pub fn label(self) -> String {
        match self {
            CoefficientName::Delta(k) => format!("Delta_{}", k + 1),
            CoefficientName::KPrime => "K_prime".into(),
            CoefficientName::PumpAmplitude => "pump".into(),
            CoefficientName::DeltaPlus => "Delta_plus".into(),
            CoefficientName::DeltaMinus => "Delta_minus".into(),
            CoefficientName::KPrimePlus => "K_prime_plus".into(),
            CoefficientName::KPrimeMinus => "K_prime_minus".into(),
            CoefficientName::Gamma4 => "gamma4".into(),
            CoefficientName::Chi(k, l) => format!("chi_{}{}", k + 1, l + 1),
            CoefficientName::Gamma2JPlus => "gamma2_Jplus".into(),
            CoefficientName::Gamma2JMinus => "gamma2_Jminus".into(),
            CoefficientName::Gamma2PlusMinus => "gamma2_plusminus".into(),
        }
    }
}

impl fmt::Display for CoefficientName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Sign pattern distinguishing the two coupler modes: s = (1, 1, -1, -1).
pub const MODE_SIGNS: [i64; 4] = [1, 1, -1, -1];
