//! Human-readable `key: value` report of every derived and effective constant.

use std::fmt::Write as _;

use fourbody_core::constants::per_two_pi;
use fourbody_core::{
    derived_constants, effective_constants, gamma4, CircuitError, CircuitParams, CoefficientName,
    ExpansionSet,
};

fn line(s: &mut String, key: &str, value: f64, unit: &str) {
    let _ = writeln!(
        s,
        "{key}: {value:.6e}{}{unit}",
        if unit.is_empty() { "" } else { " " }
    );
}

pub fn derive_report(params: &CircuitParams) -> Result<String, CircuitError> {
    let d = derived_constants(params)?;
    let g = gamma4(params)?;
    let published = effective_constants(params, ExpansionSet::Published)?;
    let rederived = effective_constants(params, ExpansionSet::Rederived)?;
    let mut s = String::new();

    let _ = writeln!(s, "# circuit");
    line(&mut s, "C_J", params.c_j, "F");
    line(&mut s, "C", params.c, "F");
    line(&mut s, "C_g", params.c_g, "F");
    let _ = writeln!(s, "n: {}", params.n);
    let _ = writeln!(s, "alpha: {}", params.alpha);

    let _ = writeln!(s, "# derived constants");
    line(&mut s, "E_C", d.e_c, "J");
    line(&mut s, "E_Cg_prime", d.e_cg_prime, "J");
    line(&mut s, "E_J_sigma", d.e_j_sigma, "J");
    line(&mut s, "E_Jg", d.e_jg, "J");
    line(&mut s, "E_Jg2", d.e_jg2, "J");
    line(&mut s, "E_Jg4", d.e_jg4, "J");
    line(&mut s, "I_cg", d.i_cg, "A");
    line(&mut s, "omega_over_2pi", per_two_pi(d.omega), "Hz");
    if d.omega_plus.is_finite() {
        line(
            &mut s,
            "omega_plus_over_2pi",
            per_two_pi(d.omega_plus),
            "Hz",
        );
    } else {
        let _ = writeln!(s, "omega_plus_over_2pi: inf Hz");
    }
    line(
        &mut s,
        "omega_minus_over_2pi",
        per_two_pi(d.omega_minus),
        "Hz",
    );
    line(&mut s, "K_over_2pi", per_two_pi(d.kerr), "Hz");
    line(&mut s, "K_minus_over_2pi", per_two_pi(d.kerr_minus), "Hz");
    line(&mut s, "p_over_2pi", per_two_pi(d.pump), "Hz");
    line(&mut s, "g_plus_over_2pi", per_two_pi(d.g_plus), "Hz");
    line(&mut s, "g_minus_over_2pi", per_two_pi(d.g_minus), "Hz");
    line(&mut s, "g_prime_plus", d.g_prime_plus, "");
    line(&mut s, "g_prime_minus", d.g_prime_minus, "");
    line(&mut s, "Omega_over_2pi", per_two_pi(d.detuning), "Hz");
    line(&mut s, "gamma4_over_2pi", per_two_pi(g.value()), "Hz");
    line(
        &mut s,
        "gamma4_circuit_form_over_2pi",
        per_two_pi(g.circuit_form),
        "Hz",
    );
    line(&mut s, "gamma4_route_gap", g.relative_gap(), "");
    line(&mut s, "gamma4_phase", g.phase, "rad");

    let _ = writeln!(
        s,
        "# effective constants over 2pi in Hz (rederived, published)"
    );
    for name in CoefficientName::all() {
        let _ = writeln!(
            s,
            "{}: {:.6e} {:.6e}",
            name.label(),
            per_two_pi(rederived.get(name)),
            per_two_pi(published.get(name))
        );
    }
    line(&mut s, "fourbody_phase", rederived.fourbody_phase, "rad");

    let _ = writeln!(s, "# warnings");
    if d.warnings.is_empty() {
        let _ = writeln!(s, "none");
    }
    for w in &d.warnings {
        let _ = writeln!(s, "warning {}: {w}", w.code());
    }
    Ok(s)
}
