use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::max_abs;
use super::{channel, coefficient_fit, conjugate_sectors, represent};
use super::{FockConfig, FockError};
use crate::algebra::derivation::fourbody_monomial;
use crate::algebra::hamiltonian::{frame_generator, full_hamiltonian, generator};
use crate::algebra::scalar::{real, Scalar};
use crate::algebra::{
    AlgebraConfig, GradedCoefficient, Mode, ModeMonomial, OperatorExpr, PhaseTag,
};
use crate::circuit::expansion::{evaluate, expansion, ExpansionSet};
use crate::circuit::{derived_constants, CircuitParams};
use crate::symbols::{CoefficientName, Param, ParamValues};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeSet {
    /// JPOs and the minus coupler mode.
    Reduced,
    /// All six modes.
    Full,
}

impl ModeSet {
    pub fn modes(self) -> Vec<Mode> {
        match self {
            ModeSet::Reduced => vec![
                Mode::Jpo(0),
                Mode::Jpo(1),
                Mode::Jpo(2),
                Mode::Jpo(3),
                Mode::Minus,
            ],
            ModeSet::Full => Mode::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourBodyConfig {
    pub levels: usize,
    pub modes: ModeSet,
    pub check_convergence: bool,
    pub convergence_tol: f64,
    /// Number of successive halvings of C after the baseline run.
    pub halvings: usize,
}

impl Default for FourBodyConfig {
    fn default() -> Self {
        FourBodyConfig {
            levels: 4,
            modes: ModeSet::Reduced,
            check_convergence: true,
            convergence_tol: 0.01,
            halvings: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourBodyRun {
    pub coupling_capacitance: f64,
    pub g_prime_minus: f64,
    /// 2 g'_-^4 K_- (rad/s).
    pub analytic: f64,
    /// Fitted coefficient of -a1† a2† a3 a4 after exact conjugation (rad/s).
    pub fitted: f64,
    pub relative_deviation: Option<f64>,
    pub fit_residual: f64,
    pub convergence_shift: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourBodyReport {
    pub runs: Vec<FourBodyRun>,
    /// Slope of ln|deviation| against ln C.
    pub exponent_vs_c: Option<f64>,
    /// Slope of ln|deviation| against ln|g'_-|.
    pub exponent_vs_g: Option<f64>,
}

impl FourBodyReport {
    pub fn baseline(&self) -> &FourBodyRun {
        &self.runs[0]
    }
}

fn active_only(expr: &OperatorExpr, config: &FockConfig) -> OperatorExpr {
    expr.filter(|m, _, _| {
        Mode::ALL
            .iter()
            .all(|&mode| !m.touches(mode) || config.slot(mode).is_some())
    })
}

fn net_change(config: &FockConfig, m: &ModeMonomial) -> Vec<i32> {
    let net = m.net_change();
    config.modes.iter().map(|mode| net[mode.index()]).collect()
}

/// Coefficient of a monomial in e^{-S} A e^{S} restricted to its channel.
fn conjugated_coefficient(
    s: &OperatorExpr,
    a: &OperatorExpr,
    target: &ModeMonomial,
    values: &ParamValues,
    config: &FockConfig,
) -> Result<(Complex64, f64), FockError> {
    let s_rep = represent(&active_only(s, config), values, config)?;
    let a_rep = represent(a, values, config)?;
    let conjugated = conjugate_sectors(&s_rep, &a_rep, config.safe_occupation)?;
    let projected = channel(&conjugated, &net_change(config, target));
    let fit = coefficient_fit(&projected, &[*target])?;
    Ok((fit.coefficients[0].1, fit.residual))
}

fn coupler_quartic() -> Result<OperatorExpr, FockError> {
    let config = AlgebraConfig::default();
    let x4 = OperatorExpr::position(Mode::Minus).power(4, &config)?;
    Ok(x4.scale_by(
        &GradedCoefficient::param(Param::KerrMinus).scale(&real(-1, 12)),
        config.max_order,
    ))
}

fn fourbody_at(
    params: &CircuitParams,
    config: &FourBodyConfig,
    levels: usize,
) -> Result<(f64, f64, f64, f64), FockError> {
    let d = derived_constants(params)?;
    let fock = FockConfig::new(levels, &config.modes.modes())?.with_safe_occupation(2)?;
    let mut values = d.param_values();
    if config.modes == ModeSet::Reduced {
        values.g_prime_plus = 0.0;
    }
    let s = generator(&AlgebraConfig::default())?;
    let (c, residual) = conjugated_coefficient(
        &s,
        &coupler_quartic()?,
        &fourbody_monomial(),
        &values,
        &fock,
    )?;
    let analytic = 2.0 * d.g_prime_minus.powi(4) * d.kerr_minus;
    Ok((-c.re, analytic, d.g_prime_minus, residual))
}

/// Exact numerical conjugation of the coupler quartic term against the
/// analytic four-body constant, for C, C/2, C/4, ...
pub fn verify_four_body(
    params: &CircuitParams,
    config: &FourBodyConfig,
) -> Result<FourBodyReport, FockError> {
    let mut runs = Vec::new();
    for step in 0..=config.halvings {
        let mut p = params.clone();
        p.c = params.c / 2f64.powi(step as i32);
        let (fitted, analytic, g, residual) = fourbody_at(&p, config, config.levels)?;
        let convergence_shift = if step == 0 && config.check_convergence {
            let (next, ..) = fourbody_at(&p, config, config.levels + 1)?;
            let scale = fitted.abs().max(f64::MIN_POSITIVE);
            let shift = if fitted == 0.0 && next == 0.0 {
                0.0
            } else {
                (next - fitted).abs() / scale
            };
            if shift > config.convergence_tol {
                return Err(FockError::TruncationFailure {
                    shift,
                    tolerance: config.convergence_tol,
                });
            }
            Some(shift)
        } else {
            None
        };
        let relative_deviation = (analytic != 0.0).then(|| (fitted - analytic) / analytic);
        runs.push(FourBodyRun {
            coupling_capacitance: p.c,
            g_prime_minus: g,
            analytic,
            fitted,
            relative_deviation,
            fit_residual: residual,
            convergence_shift,
        });
        if p.c == 0.0 {
            break;
        }
    }
    let slope = |x: &dyn Fn(&FourBodyRun) -> f64| -> Option<f64> {
        let pts: Vec<(f64, f64)> = runs
            .iter()
            .filter_map(|r| {
                r.relative_deviation
                    .filter(|d| *d != 0.0)
                    .map(|d| (x(r).ln(), d.abs().ln()))
            })
            .collect();
        least_squares_slope(&pts)
    };
    let exponent_vs_c = slope(&|r| r.coupling_capacitance);
    let exponent_vs_g = slope(&|r| r.g_prime_minus.abs());
    Ok(FourBodyReport {
        runs,
        exponent_vs_c,
        exponent_vs_g,
    })
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn kerr_pump_operator() -> OperatorExpr {
    let jpo = Mode::Jpo(0);
    let kerr = OperatorExpr::monomial(
        ModeMonomial::new(&[(jpo, 2, 1)]),
        GradedCoefficient::param(Param::Kerr),
    );
    let pump = OperatorExpr::monomial(
        ModeMonomial::annihilation(jpo),
        GradedCoefficient::param(Param::Pump).scale(&-Scalar::new(1.into(), 0.into())),
    );
    kerr.add(&pump)
}

fn single_mode_values(pump: f64, kerr: f64) -> ParamValues {
    ParamValues {
        pump,
        kerr,
        ..ParamValues::unset()
    }
}

const COHERENT_WEIGHT_TOL: f64 = 1e-8;

/// |<a0|(K a†² - p) a|a0>| for the truncated coherent state a0 = sqrt(p/K).
pub fn coherent_residual(pump: f64, kerr: f64, levels: usize) -> Result<f64, FockError> {
    let config = FockConfig::single_mode(levels)?;
    let amplitude = (pump / kerr).sqrt();
    if !amplitude.is_finite() {
        return Err(FockError::InvalidConfig(
            "p/K must be non-negative and finite".into(),
        ));
    }
    let mut state = Vec::with_capacity(levels);
    let mut c = (-amplitude * amplitude / 2.0).exp();
    for n in 0..levels {
        if n > 0 {
            c *= amplitude / (n as f64).sqrt();
        }
        state.push(c);
    }
    let weight = 1.0 - state.iter().map(|x| x * x).sum::<f64>();
    if weight > COHERENT_WEIGHT_TOL {
        return Err(FockError::CoherentTruncation { amplitude, weight });
    }
    let op = represent(
        &kerr_pump_operator(),
        &single_mode_values(pump, kerr),
        &config,
    )?;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..levels {
        for j in 0..levels {
            total += state[i] * op.matrix[(i, j)] * state[j];
        }
    }
    Ok(total.norm())
}

/// <out|(K a†² - p) a|in>.
pub fn kerr_pump_matrix_element(
    pump: f64,
    kerr: f64,
    out: usize,
    inp: usize,
    levels: usize,
) -> Result<f64, FockError> {
    let config = FockConfig::single_mode(levels)?;
    let op = represent(
        &kerr_pump_operator(),
        &single_mode_values(pump, kerr),
        &config,
    )?;
    Ok(op.matrix[(out, inp)].re)
}

pub fn coherent_residual_check(params: &CircuitParams, levels: usize) -> Result<f64, FockError> {
    let d = derived_constants(params)?;
    coherent_residual(d.pump, d.kerr, levels)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineReport {
    pub trials: usize,
    pub max_error: f64,
}

const ENGINE_TOL: f64 = 1e-12;

fn random_expr(rng: &mut ChaCha8Rng, modes: &[Mode], max_degree: u32) -> OperatorExpr {
    let mut e = OperatorExpr::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut m = ModeMonomial::IDENTITY;
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            let mode = modes[rng.gen_range(0..modes.len())].index();
            if rng.gen_bool(0.5) {
                m.powers[mode].0 += 1;
            } else {
                m.powers[mode].1 += 1;
            }
        }
        let re = real(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let im = real(rng.gen_range(-3..=3), rng.gen_range(1..=4));
        let value = Scalar::new(re.re, im.re);
        e.add_term(m, PhaseTag::ZERO, &GradedCoefficient::constant(value));
    }
    e
}

/// Random products and commutators: symbolic normal ordering against dense
/// matrix products on the safe subspace.
pub fn verify_symbolic_engine(
    seed: u64,
    trials: usize,
    levels: usize,
    max_degree: u32,
) -> Result<EngineReport, FockError> {
    let modes = [Mode::Jpo(0), Mode::Jpo(1)];
    let safe = levels.checked_sub(1 + max_degree as usize).ok_or_else(|| {
        FockError::InvalidConfig("levels too small for the requested degree".into())
    })?;
    let config = FockConfig::new(levels, &modes)?.with_safe_occupation(safe)?;
    let algebra = AlgebraConfig {
        max_degree: 2 * max_degree,
        ..AlgebraConfig::default()
    };
    let values = ParamValues::unset();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    for trial in 0..trials {
        let a = random_expr(&mut rng, &modes, max_degree);
        let b = random_expr(&mut rng, &modes, max_degree);
        let ra = represent(&a, &values, &config)?;
        let rb = represent(&b, &values, &config)?;
        let product = represent(&a.multiply(&b, &algebra)?, &values, &config)?;
        let commutator = represent(&a.commutator(&b, &algebra)?, &values, &config)?;
        let checks = [
            ("product", product.safe_block(), ra.mul(&rb).safe_block()),
            (
                "commutator",
                commutator.safe_block(),
                ra.commutator(&rb).safe_block(),
            ),
        ];
        for (label, symbolic, numeric) in checks {
            let scale = max_abs(&numeric).max(1.0);
            let err = max_abs(&(symbolic - numeric)) / scale;
            max_error = max_error.max(err);
            if err > ENGINE_TOL {
                return Err(FockError::EngineRegression {
                    seed,
                    trial,
                    detail: format!("{label} mismatch {err:e}"),
                });
            }
        }
    }
    Ok(EngineReport { trials, max_error })
}

/// Dimensionless parameter point for the effective-Hamiltonian oracle, with
/// g_± chosen so that the cancellation condition holds.
pub fn oracle_values(g_prime_plus: f64, g_prime_minus: f64) -> ParamValues {
    let mut v = ParamValues {
        omega: 1.0,
        kerr: 0.03,
        pump: 0.01,
        omega_plus: 1.6,
        omega_minus: 1.25,
        kerr_minus: 0.15,
        g_plus: 0.0,
        g_minus: 0.0,
        pump_freqs: [2.1, 1.9, 2.05, 1.95],
        g_prime_plus,
        g_prime_minus,
    };
    v.g_plus = g_prime_plus * (v.omega - v.omega_plus - v.kerr);
    v.g_minus = g_prime_minus * (v.omega - v.omega_minus - v.kerr + v.kerr_minus);
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveCheck {
    pub name: CoefficientName,
    /// All-orders value from exact conjugation.
    pub fitted: f64,
    pub rederived: f64,
    pub published: f64,
}

/// Fit every effective coefficient from the exactly conjugated six-mode
/// Hamiltonian (coupler modes included) at a numeric parameter point.
pub fn verify_effective_hamiltonian(
    values: &ParamValues,
) -> Result<Vec<EffectiveCheck>, FockError> {
    let algebra = AlgebraConfig::default();
    let config = FockConfig::new(4, &Mode::ALL)?.with_safe_occupation(2)?;
    let h = full_hamiltonian(&algebra)?;
    let undriven = h.filter(|_, t, _| t.is_zero());
    let s = represent(&generator(&algebra)?, values, &config)?;
    let conjugated = conjugate_sectors(&s, &represent(&undriven, values, &config)?, 2)?;
    let framed = conjugated.add(&represent(&frame_generator(), values, &config)?);
    let diagonal = channel(&framed, &[0; 6]);

    let jpo = Mode::Jpo;
    let mut basis = vec![ModeMonomial::IDENTITY];
    for &mode in &Mode::ALL {
        basis.push(ModeMonomial::number(mode));
        basis.push(ModeMonomial::new(&[(mode, 2, 2)]));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            basis.push(ModeMonomial::new(&[
                (Mode::ALL[i], 1, 1),
                (Mode::ALL[j], 1, 1),
            ]));
        }
    }
    let fit = coefficient_fit(&diagonal, &basis)?;
    let get = |m: ModeMonomial| fit.coefficient(&m).expect("basis member").re;

    let drive = OperatorExpr::position(jpo(0)).power(2, &algebra)?.scale_by(
        &GradedCoefficient::param(Param::Pump).scale(&real(1, 2)),
        algebra.max_order,
    );
    let squeeze = ModeMonomial::new(&[(jpo(0), 0, 2)]);
    let (pump_c, _) =
        conjugated_coefficient(&generator(&algebra)?, &drive, &squeeze, values, &config)?;
    let (four_c, _) = conjugated_coefficient(
        &generator(&algebra)?,
        &undriven,
        &fourbody_monomial(),
        values,
        &config,
    )?;

    let mut out = Vec::new();
    for name in CoefficientName::all() {
        let fitted = match name {
            CoefficientName::Delta(k) => get(ModeMonomial::number(jpo(k))),
            CoefficientName::KPrime => -2.0 * get(ModeMonomial::new(&[(jpo(0), 2, 2)])),
            CoefficientName::PumpAmplitude => 2.0 * pump_c.re,
            CoefficientName::DeltaPlus => get(ModeMonomial::number(Mode::Plus)),
            CoefficientName::DeltaMinus => get(ModeMonomial::number(Mode::Minus)),
            CoefficientName::KPrimePlus => -2.0 * get(ModeMonomial::new(&[(Mode::Plus, 2, 2)])),
            CoefficientName::KPrimeMinus => -2.0 * get(ModeMonomial::new(&[(Mode::Minus, 2, 2)])),
            CoefficientName::Gamma4 => -four_c.re,
            CoefficientName::Chi(k, l) => {
                -get(ModeMonomial::new(&[(jpo(k), 1, 1), (jpo(l), 1, 1)]))
            }
            CoefficientName::Gamma2JPlus => {
                -get(ModeMonomial::new(&[(jpo(0), 1, 1), (Mode::Plus, 1, 1)]))
            }
            CoefficientName::Gamma2JMinus => {
                -get(ModeMonomial::new(&[(jpo(0), 1, 1), (Mode::Minus, 1, 1)]))
            }
            CoefficientName::Gamma2PlusMinus => {
                -get(ModeMonomial::new(&[
                    (Mode::Plus, 1, 1),
                    (Mode::Minus, 1, 1),
                ])) / 4.0
            }
        };
        out.push(EffectiveCheck {
            name,
            fitted,
            rederived: evaluate(&expansion(ExpansionSet::Rederived, name), values),
            published: evaluate(&expansion(ExpansionSet::Published, name), values),
        });
    }
    Ok(out)
}
