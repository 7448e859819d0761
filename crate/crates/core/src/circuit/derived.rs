use super::params::DEFAULT_PUMP_RATIO;
use super::{CircuitError, CircuitParams, CouplerTuning, JpoSpec, Warning};
use super::{G_PRIME_WARN, PUMP_RATIO_WARN};
use crate::constants::{ELEMENTARY_CHARGE as E, HBAR};
use crate::symbols::ParamValues;

const POLE_TOL: f64 = 1e-12;
const RESONANCE_TOL: f64 = 1e-12;

/// Every intermediate constant. Frequencies are angular (rad/s), energies in J.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedConstants {
    pub e_c: f64,
    pub e_cg_prime: f64,
    pub e_j_sigma: f64,
    pub e_jg: f64,
    pub e_jg2: f64,
    pub e_jg4: f64,
    pub omega: f64,
    /// Infinite in the decoupled limit C = 0.
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub kerr: f64,
    pub kerr_minus: f64,
    pub pump: f64,
    pub g_plus: f64,
    pub g_minus: f64,
    pub g_prime_plus: f64,
    pub g_prime_minus: f64,
    pub detuning: f64,
    pub i_cg: f64,
    pub pump_freqs: [f64; 4],
    pub pump_phases: [f64; 4],
    pub warnings: Vec<Warning>,
}

impl DerivedConstants {
    pub fn param_values(&self) -> ParamValues {
        ParamValues {
            omega: self.omega,
            kerr: self.kerr,
            pump: self.pump,
            omega_plus: self.omega_plus,
            omega_minus: self.omega_minus,
            kerr_minus: self.kerr_minus,
            g_plus: self.g_plus,
            g_minus: self.g_minus,
            pump_freqs: self.pump_freqs,
            g_prime_plus: self.g_prime_plus,
            g_prime_minus: self.g_prime_minus,
        }
    }
}

/// Signed ratio E_Jg^(4)/E_Jg^(2) = (1 - n^3 alpha) / (n^2 (1 - n alpha)).
pub fn nonlinearity_ratio(n: u32, alpha: f64) -> Result<f64, CircuitError> {
    let nf = n as f64;
    let den = nf * nf * (1.0 - nf * alpha);
    if (1.0 - nf * alpha).abs() < POLE_TOL {
        return Err(CircuitError::QuartonPole { n });
    }
    Ok((1.0 - nf.powi(3) * alpha) / den)
}

/// 1/n - alpha, the prefactor of the quadratic coupler potential.
fn quadratic_weight(params: &CircuitParams) -> Result<f64, CircuitError> {
    let w = 1.0 / params.n as f64 - params.alpha;
    if w.abs() < POLE_TOL {
        return Err(CircuitError::QuartonPole { n: params.n });
    }
    if w < 0.0 {
        return Err(CircuitError::UnphysicalBranch { value: w });
    }
    Ok(w)
}

fn charging_energy(c_j: f64) -> f64 {
    E * E / (2.0 * c_j)
}

/// Dressing factor of the coupler charging energy, 1 + C^2 / (C_J (C_g + C)).
fn coupler_dressing(params: &CircuitParams) -> f64 {
    let (cj, c, cg) = (params.c_j, params.c, params.c_g);
    1.0 + c * c / (cj * (cg + c))
}

fn coupler_charging_energy(params: &CircuitParams) -> f64 {
    let (cj, c, cg) = (params.c_j, params.c, params.c_g);
    E * E / (2.0 * cj) * (cj / (cg + c) + (c / (cg + c)).powi(2))
}

fn jpo_frequency(params: &CircuitParams) -> (f64, f64) {
    let e_c = charging_energy(params.c_j);
    match params.jpo {
        JpoSpec::Frequency(w) => ((HBAR * w).powi(2) / (8.0 * e_c), w),
        JpoSpec::JosephsonEnergy(ej) => (ej, (8.0 * e_c * ej).sqrt() / HBAR),
    }
}

/// Result of back-solving the coupler junction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplerSolution {
    pub e_jg: f64,
    pub i_cg: f64,
    pub omega_minus: f64,
}

fn ejg_for_omega_minus(
    params: &CircuitParams,
    omega_minus: f64,
) -> Result<CouplerSolution, CircuitError> {
    let weight = quadratic_weight(params)?;
    if !(omega_minus > 0.0) {
        return Err(CircuitError::NoSolution(format!(
            "required omega_minus = {omega_minus:e} rad/s is not positive"
        )));
    }
    let e_cg = coupler_charging_energy(params);
    let e_jg = (HBAR * omega_minus).powi(2) / (8.0 * e_cg * weight);
    if !e_jg.is_finite() {
        return Err(CircuitError::QuartonPole { n: params.n });
    }
    Ok(CouplerSolution {
        e_jg,
        i_cg: 2.0 * E / HBAR * e_jg,
        omega_minus,
    })
}

/// Back-solve E_Jg so that omega - omega_- - K + K_- equals `detuning`.
/// K_- does not depend on E_Jg, so the relation is linear in omega_-.
pub fn solve_ejg_for_omega(
    params: &CircuitParams,
    detuning: f64,
) -> Result<CouplerSolution, CircuitError> {
    params.validate()?;
    quadratic_weight(params)?;
    let (_, omega) = jpo_frequency(params);
    let kerr = charging_energy(params.c_j) / HBAR;
    let kerr_minus =
        coupler_charging_energy(params) * nonlinearity_ratio(params.n, params.alpha)? / HBAR;
    let omega_minus = omega - detuning - kerr + kerr_minus;
    ejg_for_omega_minus(params, omega_minus)
}

pub fn derived_constants(params: &CircuitParams) -> Result<DerivedConstants, CircuitError> {
    let mut warnings = params.validate()?;
    let e_c = charging_energy(params.c_j);
    let e_cg_prime = coupler_charging_energy(params);
    let (e_j_sigma, omega) = jpo_frequency(params);
    let kerr = e_c / HBAR;

    let e_jg = match params.coupler {
        CouplerTuning::JosephsonEnergy(e) => {
            quadratic_weight(params)?;
            e
        }
        CouplerTuning::OmegaMinus(w) => ejg_for_omega_minus(params, w)?.e_jg,
        CouplerTuning::Detuning(d) => solve_ejg_for_omega(params, d)?.e_jg,
    };
    let nf = params.n as f64;
    let e_jg2 = (1.0 / nf - params.alpha) * e_jg;
    let e_jg4 = (1.0 / nf.powi(3) - params.alpha) * e_jg;
    if !(e_jg2 > 0.0) {
        return Err(CircuitError::UnphysicalBranch {
            value: e_jg2 / e_jg,
        });
    }
    let ratio = nonlinearity_ratio(params.n, params.alpha)?;

    let omega_minus = (8.0 * e_cg_prime * e_jg2).sqrt() / HBAR;
    let kerr_minus = e_cg_prime * ratio / HBAR;
    let omega_plus = if params.c == 0.0 {
        f64::INFINITY
    } else {
        4.0 * kerr * (params.c_j / params.c + 1.0) * (e_jg2 / (8.0 * e_cg_prime)).sqrt()
    };
    let g_plus = (omega * omega_minus).sqrt() / 4.0 * (e_c / e_cg_prime).sqrt();
    let g_minus = params.c / (params.c_g + params.c) * g_plus;

    let g_prime_plus = if params.c == 0.0 {
        0.0
    } else {
        let den = omega - omega_plus - kerr;
        if den.abs() <= RESONANCE_TOL * omega.max(omega_plus) {
            return Err(CircuitError::Resonance {
                denominator: "omega - omega_plus - K",
            });
        }
        g_plus / den
    };
    let detuning = omega - omega_minus - kerr + kerr_minus;
    let scale = omega.max(omega_minus).max(kerr_minus.abs());
    if detuning.abs() <= RESONANCE_TOL * scale {
        return Err(CircuitError::Resonance {
            denominator: "omega - omega_minus - K + K_minus",
        });
    }
    let g_prime_minus = g_minus / detuning;

    let delta_e_j = params.delta_e_j.unwrap_or(DEFAULT_PUMP_RATIO * e_j_sigma);
    if delta_e_j / e_j_sigma > PUMP_RATIO_WARN {
        warnings.push(Warning::StrongPump {
            ratio: delta_e_j / e_j_sigma,
        });
    }
    let pump = delta_e_j * omega / (4.0 * e_j_sigma);
    for (branch, value) in [('+', g_prime_plus), ('-', g_prime_minus)] {
        if value.abs() > G_PRIME_WARN {
            warnings.push(Warning::LargeGPrime { branch, value });
        }
    }

    Ok(DerivedConstants {
        e_c,
        e_cg_prime,
        e_j_sigma,
        e_jg,
        e_jg2,
        e_jg4,
        omega,
        omega_plus,
        omega_minus,
        kerr,
        kerr_minus,
        pump,
        g_plus,
        g_minus,
        g_prime_plus,
        g_prime_minus,
        detuning,
        i_cg: 2.0 * E / HBAR * e_jg,
        pump_freqs: params.pump_freqs.unwrap_or([2.0 * omega; 4]),
        pump_phases: params.pump_phases,
        warnings,
    })
}

/// Four-body coupling constant evaluated by two independent routes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gamma4 {
    /// 2 g'_-^4 K_- from the derived constants.
    pub composition: f64,
    /// Direct expression in circuit parameters.
    pub circuit_form: f64,
    /// Sum s_k theta_k / 2.
    pub phase: f64,
}

impl Gamma4 {
    pub fn value(&self) -> f64 {
        self.composition
    }

    pub fn relative_gap(&self) -> f64 {
        let scale = self.composition.abs().max(self.circuit_form.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.composition - self.circuit_form).abs() / scale
        }
    }
}

pub fn gamma4(params: &CircuitParams) -> Result<Gamma4, CircuitError> {
    let d = derived_constants(params)?;
    let composition = 2.0 * d.g_prime_minus.powi(4) * d.kerr_minus;

    let (cj, c, cg) = (params.c_j, params.c, params.c_g);
    let nf = params.n as f64;
    let alpha = params.alpha;
    let eta = coupler_dressing(params);
    let weight = 1.0 / nf - alpha;
    let omega_minus = (4.0 * E * E * eta / (cg + c) * weight * d.e_jg).sqrt() / HBAR;
    let nonlinear = (1.0 - nf.powi(3) * alpha) / (nf * nf * (1.0 - nf * alpha));
    let detuning = d.omega - omega_minus - E * E / (2.0 * HBAR * cj)
        + E * E * eta * nonlinear / (2.0 * HBAR * (cg + c));
    let circuit_form =
        (d.omega * omega_minus).powi(2) * c.powi(4) * E * E * (1.0 - nf.powi(3) * alpha)
            / (HBAR
                * (4.0 * detuning).powi(4)
                * cj
                * cj
                * (cg + c).powi(3)
                * nf
                * nf
                * (1.0 - nf * alpha)
                * eta);

    Ok(Gamma4 {
        composition,
        circuit_form,
        phase: params.fourbody_phase(),
    })
}
