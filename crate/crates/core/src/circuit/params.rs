use super::{CircuitError, Warning, COUPLING_RATIO_WARN};
use crate::constants::{angular, FEMTOFARAD, GHZ, MHZ};

/// How the coupler junction is specified.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CouplerTuning {
    /// Coupler Josephson energy E_Jg (J).
    JosephsonEnergy(f64),
    /// Target coupler frequency omega_- (rad/s); E_Jg is back-solved.
    OmegaMinus(f64),
    /// Target detuning Omega = omega - omega_- - K + K_- (rad/s); E_Jg is back-solved.
    Detuning(f64),
}

/// How the JPO is specified: by frequency or by total Josephson energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JpoSpec {
    Frequency(f64),
    JosephsonEnergy(f64),
}

/// Raw circuit inputs, SI units throughout. The coupler flux bias is fixed at
/// half a flux quantum and is therefore not a field.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitParams {
    pub c_j: f64,
    pub c: f64,
    pub c_g: f64,
    pub n: u32,
    pub alpha: f64,
    pub jpo: JpoSpec,
    pub coupler: CouplerTuning,
    /// Pump modulation amplitude (J). Defaults to 5% of E_J_sigma.
    pub delta_e_j: Option<f64>,
    /// Pump angular frequencies. Default to twice the JPO frequency.
    pub pump_freqs: Option<[f64; 4]>,
    pub pump_phases: [f64; 4],
}

pub const DEFAULT_PUMP_RATIO: f64 = 0.05;
const PUMP_CONSTRAINT_TOL: f64 = 1e-12;

impl CircuitParams {
    /// n = 1, alpha = 0, omega = 2pi 10 GHz, C_J = 500 fF, C = 0.5 fF,
    /// C_g = 100 fF, Omega = 2pi 20 MHz.
    pub fn fig2() -> Self {
        CircuitParams {
            c_j: 500.0 * FEMTOFARAD,
            c: 0.5 * FEMTOFARAD,
            c_g: 100.0 * FEMTOFARAD,
            n: 1,
            alpha: 0.0,
            jpo: JpoSpec::Frequency(angular(10.0 * GHZ)),
            coupler: CouplerTuning::Detuning(angular(20.0 * MHZ)),
            delta_e_j: None,
            pump_freqs: None,
            pump_phases: [0.0; 4],
        }
    }

    pub fn validate(&self) -> Result<Vec<Warning>, CircuitError> {
        let mut warnings = Vec::new();
        positive("C_J", self.c_j)?;
        positive("C_g", self.c_g)?;
        finite("C", self.c)?;
        if self.c < 0.0 {
            return Err(invalid("C", "must be non-negative"));
        }
        if self.c >= self.c_j {
            return Err(invalid("C", "must be smaller than C_J"));
        }
        if self.c == 0.0 {
            warnings.push(Warning::Decoupled);
        } else if self.c / self.c_j > COUPLING_RATIO_WARN {
            warnings.push(Warning::StrongCoupling {
                ratio: self.c / self.c_j,
            });
        }
        if self.n == 0 {
            return Err(invalid("n", "must be at least 1"));
        }
        finite("alpha", self.alpha)?;
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(invalid("alpha", "must satisfy 0 <= alpha < 1"));
        }
        match self.jpo {
            JpoSpec::Frequency(w) => positive("omega", w)?,
            JpoSpec::JosephsonEnergy(e) => positive("E_J_sigma", e)?,
        }
        match self.coupler {
            CouplerTuning::JosephsonEnergy(e) => {
                finite("E_Jg", e)?;
                if e == 0.0 {
                    return Err(invalid("E_Jg", "must be nonzero"));
                }
            }
            CouplerTuning::OmegaMinus(w) => positive("omega_minus", w)?,
            CouplerTuning::Detuning(w) => finite("Omega", w)?,
        }
        if let Some(d) = self.delta_e_j {
            positive("delta_E_J", d)?;
        }
        if let Some(wp) = self.pump_freqs {
            for w in wp {
                positive("pump_freqs", w)?;
            }
            let lhs = wp[0] + wp[1];
            let rhs = wp[2] + wp[3];
            if (lhs - rhs).abs() > PUMP_CONSTRAINT_TOL * lhs.abs().max(rhs.abs()) {
                return Err(invalid(
                    "pump_freqs",
                    "pump constraint w_p1 + w_p2 = w_p3 + w_p4 violated",
                ));
            }
        }
        for th in self.pump_phases {
            finite("pump_phases", th)?;
        }
        Ok(warnings)
    }

    /// Sum s_k theta_k / 2 with s = (1, 1, -1, -1).
    pub fn fourbody_phase(&self) -> f64 {
        let t = self.pump_phases;
        (t[0] + t[1] - t[2] - t[3]) / 2.0
    }
}

fn invalid(name: &'static str, reason: &str) -> CircuitError {
    CircuitError::InvalidParameter {
        name,
        reason: reason.to_string(),
    }
}

fn finite(name: &'static str, x: f64) -> Result<(), CircuitError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, "must be finite"))
    }
}

fn positive(name: &'static str, x: f64) -> Result<(), CircuitError> {
    finite(name, x)?;
    if x > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, "must be positive"))
    }
}
