//! Verification levels: symbolic regression and closed-form checks (fast),
//! plus the Fock-space oracle runs (full).

use std::fmt;

use fourbody_core::algebra::{
    derive_effective_hamiltonian, determine_g_primes, AlgebraConfig, RationalForm, ResidualFamily,
};
use fourbody_core::circuit::expansion::{expansion, ExpansionSet, ExpansionTerm};
use fourbody_core::fock::{
    coherent_residual_check, oracle_values, verify_effective_hamiltonian, verify_four_body,
    verify_symbolic_engine, FourBodyConfig,
};
use fourbody_core::{
    derived_constants, gamma4, inverse_capacitance_analytic, inverse_capacitance_numeric,
    random_circuits, CircuitParams, CoefficientName,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "check {}: {status} ({})", self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

fn failed(name: &'static str, err: impl fmt::Display) -> Check {
    check(name, false, err.to_string())
}

const SAMPLE_SEED: u64 = 20_240_601;

/// Exact comparison of every derived coefficient polynomial against `table`.
pub fn polynomial_regression(table: impl Fn(CoefficientName) -> Vec<ExpansionTerm>) -> Check {
    let name = "effective_polynomials";
    let derivation = match derive_effective_hamiltonian(&AlgebraConfig::default()) {
        Ok(d) => d,
        Err(e) => return failed(name, e),
    };
    match derivation.check_against(table) {
        Ok(()) => check(
            name,
            true,
            format!("{} coefficients identical", CoefficientName::all().len()),
        ),
        Err(e) => failed(name, e),
    }
}

fn published_deviations() -> Vec<String> {
    let Ok(derivation) = derive_effective_hamiltonian(&AlgebraConfig::default()) else {
        return vec![];
    };
    derivation
        .compare(ExpansionSet::Published)
        .into_iter()
        .filter(|c| !c.matches())
        .map(|c| {
            format!(
                "published {} differs from the derivation by {}",
                c.name.label(),
                c.difference()
            )
        })
        .collect()
}

fn cancellation_check() -> Check {
    let name = "g_prime_cancellation";
    match determine_g_primes() {
        Ok(det) => {
            let forms = det
                .g_prime_plus
                .equivalent(&RationalForm::g_plus_closed_form())
                && det
                    .g_prime_minus
                    .equivalent(&RationalForm::g_minus_closed_form());
            let families = det.residual_families();
            let expected = [
                ResidualFamily::PlusKerrPump,
                ResidualFamily::MinusKerrPump,
                ResidualFamily::CouplerNonlinearity,
            ];
            let ok = forms && families.len() == 3 && expected.iter().all(|f| families.contains(f));
            check(
                name,
                ok,
                format!(
                    "closed forms {}, residual families {:?}",
                    if forms { "match" } else { "differ" },
                    families
                ),
            )
        }
        Err(e) => failed(name, e),
    }
}

fn inverse_check(params: &CircuitParams) -> Check {
    let name = "inverse_capacitance";
    let mut worst: f64 = 0.0;
    let mut samples = random_circuits(SAMPLE_SEED, 100);
    samples.push(params.clone());
    for p in samples.iter().filter(|p| p.c > 0.0) {
        let (a, n) = match (
            inverse_capacitance_analytic(p),
            inverse_capacitance_numeric(p),
        ) {
            (Ok(a), Ok(n)) => (a.to_matrix(), n),
            (Err(e), _) | (_, Err(e)) => return failed(name, e),
        };
        for (x, y) in a.iter().zip(n.iter()) {
            worst = worst.max((x - y).abs() / y.abs());
        }
    }
    check(
        name,
        worst < 1e-12,
        format!(
            "max relative deviation {worst:.2e} over {} circuits",
            samples.len()
        ),
    )
}

fn route_check(params: &CircuitParams) -> Check {
    let name = "gamma4_routes";
    let mut worst: f64 = 0.0;
    let mut evaluated = 0;
    let mut samples = random_circuits(SAMPLE_SEED + 1, 1000);
    samples.push(params.clone());
    for p in &samples {
        if let Ok(g) = gamma4(p) {
            worst = worst.max(g.relative_gap());
            evaluated += 1;
        }
    }
    check(
        name,
        worst < 1e-10,
        format!("max relative gap {worst:.2e} over {evaluated} circuits"),
    )
}

fn engine_check() -> Check {
    let name = "symbolic_engine";
    match verify_symbolic_engine(SAMPLE_SEED, 100, 6, 3) {
        Ok(r) => check(
            name,
            true,
            format!("{} trials, max error {:.2e}", r.trials, r.max_error),
        ),
        Err(e) => failed(name, e),
    }
}

fn four_body_check(params: &CircuitParams) -> Check {
    let name = "four_body_oracle";
    let report = match verify_four_body(params, &FourBodyConfig::default()) {
        Ok(r) => r,
        Err(e) => return failed(name, e),
    };
    let base = report.baseline();
    match base.relative_deviation {
        None => check(
            name,
            base.fitted.abs() < 1e-12,
            format!("decoupled, fitted {:.2e}", base.fitted),
        ),
        Some(dev) => {
            let exponent = report.exponent_vs_c.unwrap_or(f64::NAN);
            let ok = dev.abs() <= 0.35 && (exponent - 2.0).abs() <= 0.3;
            check(
                name,
                ok,
                format!(
                    "relative deviation {dev:.4}, exponent vs C {exponent:.3}, d to d+1 shift {:.1e}",
                    base.convergence_shift.unwrap_or(0.0)
                ),
            )
        }
    }
}

fn coherent_check(params: &CircuitParams) -> Check {
    let name = "coherent_residual";
    let d = match derived_constants(params) {
        Ok(d) => d,
        Err(e) => return failed(name, e),
    };
    let amplitude = (d.pump / d.kerr).sqrt();
    let levels = (amplitude * amplitude + 12.0 * amplitude + 30.0).ceil() as usize;
    match coherent_residual_check(params, levels) {
        Ok(r) => check(
            name,
            r < 1e-6,
            format!("residual {r:.2e} at amplitude {amplitude:.3}, {levels} levels"),
        ),
        Err(e) => failed(name, e),
    }
}

fn oracle_check() -> Check {
    let name = "effective_oracle";
    let coarse = verify_effective_hamiltonian(&oracle_values(0.1, 0.12));
    let fine = verify_effective_hamiltonian(&oracle_values(0.05, 0.06));
    let (coarse, fine) = match (coarse, fine) {
        (Ok(c), Ok(f)) => (c, f),
        (Err(e), _) | (_, Err(e)) => return failed(name, e),
    };
    let mut worst_ratio = f64::INFINITY;
    let mut offender = String::new();
    for (c, f) in coarse.iter().zip(&fine) {
        let (ec, ef) = (
            (c.fitted - c.rederived).abs(),
            (f.fitted - f.rederived).abs(),
        );
        if ec < 1e-12 {
            continue;
        }
        let ratio = ec / ef.max(1e-300);
        if ratio < worst_ratio {
            worst_ratio = ratio;
            offender = c.name.label();
        }
    }
    check(
        name,
        worst_ratio >= 32.0,
        format!("slowest error reduction {worst_ratio:.1}x ({offender}) when halving g'"),
    )
}

pub fn run_verify(params: &CircuitParams, level: Level) -> VerifyReport {
    let mut checks = vec![
        polynomial_regression(|n| expansion(ExpansionSet::Rederived, n)),
        cancellation_check(),
        inverse_check(params),
        route_check(params),
        engine_check(),
    ];
    if level == Level::Full {
        checks.push(four_body_check(params));
        checks.push(coherent_check(params));
        checks.push(oracle_check());
    }
    VerifyReport {
        checks,
        notes: published_deviations(),
    }
}
