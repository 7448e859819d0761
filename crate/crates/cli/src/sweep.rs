//! Declarative parameter sweeps, figure presets and deterministic CSV.

use std::fmt::Write as _;

use fourbody_core::constants::{angular, per_two_pi, FEMTOFARAD, GHZ};
use fourbody_core::{
    derived_constants, gamma4, nonlinearity_ratio, CircuitParams, CouplerTuning, JpoSpec,
};
use rayon::prelude::*;

use crate::config::Quantity;

/// Gap kept below the quarton point 1/n in alpha sweeps.
pub const POLE_MARGIN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    CouplerCapacitance,
    CouplerFrequency,
    JpoFrequency,
    AreaRatio,
    CouplingCapacitance,
    JunctionCount,
}

impl Axis {
    pub const ALL: [Axis; 6] = [
        Axis::CouplerCapacitance,
        Axis::CouplerFrequency,
        Axis::JpoFrequency,
        Axis::AreaRatio,
        Axis::CouplingCapacitance,
        Axis::JunctionCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axis::CouplerCapacitance => "C_g",
            Axis::CouplerFrequency => "omega_minus",
            Axis::JpoFrequency => "omega",
            Axis::AreaRatio => "alpha",
            Axis::CouplingCapacitance => "C",
            Axis::JunctionCount => "n",
        }
    }

    pub fn from_name(name: &str) -> Option<Axis> {
        Axis::ALL.into_iter().find(|a| a.name() == name)
    }

    pub fn quantity(self) -> Quantity {
        match self {
            Axis::CouplerCapacitance | Axis::CouplingCapacitance => Quantity::Capacitance,
            Axis::CouplerFrequency | Axis::JpoFrequency => Quantity::Frequency,
            Axis::AreaRatio => Quantity::Dimensionless,
            Axis::JunctionCount => Quantity::Count,
        }
    }

    /// CSV column header including the unit.
    pub fn column(self) -> &'static str {
        match self {
            Axis::CouplerCapacitance => "C_g_F",
            Axis::CouplerFrequency => "omega_minus_over_2pi_Hz",
            Axis::JpoFrequency => "omega_over_2pi_Hz",
            Axis::AreaRatio => "alpha",
            Axis::CouplingCapacitance => "C_F",
            Axis::JunctionCount => "n_axis",
        }
    }

    /// Value as written in the CSV (frequencies divided by 2pi).
    pub fn display(self, value: f64) -> f64 {
        match self.quantity() {
            Quantity::Frequency => per_two_pi(value),
            _ => value,
        }
    }

    pub fn apply(self, base: &CircuitParams, value: f64) -> CircuitParams {
        let mut p = base.clone();
        match self {
            Axis::CouplerCapacitance => p.c_g = value,
            Axis::CouplerFrequency => p.coupler = CouplerTuning::OmegaMinus(value),
            Axis::JpoFrequency => p.jpo = JpoSpec::Frequency(value),
            Axis::AreaRatio => p.alpha = value,
            Axis::CouplingCapacitance => p.c = value,
            Axis::JunctionCount => p.n = value.round() as u32,
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRange {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepRange {
    pub fn validate(&self) -> Result<(), String> {
        if self.points < 2 {
            return Err("at least 2 points are required".into());
        }
        if !(self.start < self.stop) {
            return Err("start must be below stop".into());
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err("a log scale requires a positive range".into());
        }
        if self.axis == Axis::JunctionCount
            && (self.start < 1.0 || self.start.fract() != 0.0 || self.stop.fract() != 0.0)
        {
            return Err("n sweeps need integer bounds of at least 1".into());
        }
        Ok(())
    }

    pub fn grid(&self, stop: f64) -> Vec<f64> {
        if self.axis == Axis::JunctionCount {
            return (self.start as u32..=stop as u32).map(f64::from).collect();
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i + 1 == self.points {
                    return stop;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub base: CircuitParams,
    pub range: SweepRange,
    /// Junction counts to repeat the sweep for; defaults to the base n.
    pub n_list: Option<Vec<u32>>,
}

impl SweepSpec {
    pub fn fixed_detuning(&self) -> Option<f64> {
        match self.base.coupler {
            CouplerTuning::Detuning(w) if self.range.axis != Axis::CouplerFrequency => Some(w),
            _ => None,
        }
    }

    pub fn junction_counts(&self) -> Vec<u32> {
        self.n_list.clone().unwrap_or_else(|| vec![self.base.n])
    }

    /// (n, axis value, is the quarton-point sentinel).
    pub fn points(&self) -> Vec<(u32, f64, bool)> {
        let mut out = Vec::new();
        for n in self.junction_counts() {
            if self.range.axis == Axis::AreaRatio {
                let pole = 1.0 / n as f64;
                let stop = self.range.stop.min(pole - POLE_MARGIN);
                out.extend(self.range.grid(stop).into_iter().map(|a| (n, a, false)));
                out.push((n, pole, true));
            } else {
                out.extend(
                    self.range
                        .grid(self.range.stop)
                        .into_iter()
                        .map(|v| (n, v, false)),
                );
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RowValues {
    pub gamma4_over_2pi: f64,
    pub g_prime_minus: f64,
    pub g_prime_plus: f64,
    pub omega_minus_over_2pi: f64,
    pub detuning_over_2pi: f64,
    pub e_jg: f64,
    pub i_cg: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: u32,
    pub axis_value: f64,
    /// None when the point is singular; `flags` then names the error.
    pub values: Option<RowValues>,
    pub flags: Vec<String>,
}

impl SweepRow {
    pub fn is_singular(&self) -> bool {
        self.values.is_none()
    }
}

pub fn evaluate_point(
    params: &CircuitParams,
) -> Result<(RowValues, Vec<String>), fourbody_core::CircuitError> {
    let d = derived_constants(params)?;
    let g = gamma4(params)?;
    let values = RowValues {
        gamma4_over_2pi: per_two_pi(g.value()),
        g_prime_minus: d.g_prime_minus,
        g_prime_plus: d.g_prime_plus,
        omega_minus_over_2pi: per_two_pi(d.omega_minus),
        detuning_over_2pi: per_two_pi(d.detuning),
        e_jg: d.e_jg,
        i_cg: d.i_cg,
    };
    Ok((
        values,
        d.warnings.iter().map(|w| w.code().to_string()).collect(),
    ))
}

fn evaluate_row(spec: &SweepSpec, n: u32, value: f64, sentinel: bool) -> SweepRow {
    let mut base = spec.base.clone();
    base.n = n;
    if sentinel {
        let flag = match nonlinearity_ratio(n, value) {
            Err(e) => e.code().to_string(),
            Ok(_) => "sentinel".to_string(),
        };
        return SweepRow {
            n,
            axis_value: value,
            values: None,
            flags: vec![flag],
        };
    }
    let params = spec.range.axis.apply(&base, value);
    match evaluate_point(&params) {
        Ok((values, flags)) => SweepRow {
            n: params.n,
            axis_value: value,
            values: Some(values),
            flags,
        },
        Err(e) => SweepRow {
            n: params.n,
            axis_value: value,
            values: None,
            flags: vec![e.code().to_string()],
        },
    }
}

/// Evaluate every grid point in parallel; rows keep grid order.
pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    spec.points()
        .into_par_iter()
        .map(|(n, v, sentinel)| evaluate_row(spec, n, v, sentinel))
        .collect()
}

pub const PRESETS: [&str; 5] = ["fig2a", "fig2b", "fig2c", "fig3a", "fig3b"];

/// Figure presets over the reference circuit (n = 1, alpha = 0, omega = 2pi 10 GHz,
/// C_J = 500 fF, C = 0.5 fF, Omega = 2pi 20 MHz, C_g = 100 fF where fixed).
pub fn preset(name: &str) -> Option<SweepSpec> {
    let base = CircuitParams::fig2();
    let linear = |axis, start, stop, points| SweepRange {
        axis,
        start,
        stop,
        points,
        scale: Scale::Linear,
    };
    let spec = match name {
        "fig2a" => SweepSpec {
            name: name.into(),
            base,
            range: linear(
                Axis::CouplerCapacitance,
                50.0 * FEMTOFARAD,
                500.0 * FEMTOFARAD,
                91,
            ),
            n_list: None,
        },
        "fig2b" => SweepSpec {
            name: name.into(),
            base: CircuitParams {
                coupler: CouplerTuning::OmegaMinus(reference_coupler_frequency()),
                ..base
            },
            range: linear(
                Axis::CouplerFrequency,
                angular(10.04 * GHZ),
                angular(10.15 * GHZ),
                111,
            ),
            n_list: None,
        },
        "fig2c" => SweepSpec {
            name: name.into(),
            base: CircuitParams {
                coupler: CouplerTuning::OmegaMinus(reference_coupler_frequency()),
                ..base
            },
            range: linear(
                Axis::JpoFrequency,
                angular(9.99 * GHZ),
                angular(10.10 * GHZ),
                111,
            ),
            n_list: None,
        },
        "fig3a" | "fig3b" => SweepSpec {
            name: name.into(),
            base,
            range: linear(Axis::AreaRatio, 0.0, 1.0, 201),
            n_list: Some(vec![1, 2, 3, 5, 10]),
        },
        _ => return None,
    };
    Some(spec)
}

/// omega_- of the reference circuit at fixed Omega.
pub fn reference_coupler_frequency() -> f64 {
    derived_constants(&CircuitParams::fig2())
        .expect("reference circuit is regular")
        .omega_minus
}

fn describe_params(p: &CircuitParams) -> String {
    let jpo = match p.jpo {
        JpoSpec::Frequency(w) => format!("omega/2pi = {:.12e} Hz", per_two_pi(w)),
        JpoSpec::JosephsonEnergy(e) => format!("E_J_sigma = {e:.12e} J"),
    };
    let coupler = match p.coupler {
        CouplerTuning::JosephsonEnergy(e) => format!("E_Jg = {e:.12e} J"),
        CouplerTuning::OmegaMinus(w) => format!("omega_minus/2pi = {:.12e} Hz", per_two_pi(w)),
        CouplerTuning::Detuning(w) => format!("Omega/2pi = {:.12e} Hz", per_two_pi(w)),
    };
    format!(
        "C_J = {:.12e} F, C = {:.12e} F, C_g = {:.12e} F, n = {}, alpha = {}, {jpo}, {coupler}",
        p.c_j, p.c, p.c_g, p.n, p.alpha
    )
}

pub const COLUMNS: [&str; 8] = [
    "gamma4_over_2pi_Hz",
    "g_prime_minus",
    "g_prime_plus",
    "omega_minus_over_2pi_Hz",
    "Omega_over_2pi_Hz",
    "E_Jg_J",
    "I_cg_A",
    "flags",
];

pub fn to_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let r = &spec.range;
    let _ = writeln!(s, "# fourbody sweep");
    let _ = writeln!(s, "# version = {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "# sweep = {}", spec.name);
    let _ = writeln!(
        s,
        "# axis = {}, start = {:.12e}, stop = {:.12e}, points = {}, scale = {}",
        r.axis.name(),
        r.axis.display(r.start),
        r.axis.display(r.stop),
        r.points,
        match r.scale {
            Scale::Linear => "linear",
            Scale::Log => "log",
        }
    );
    if r.axis == Axis::AreaRatio {
        let _ = writeln!(
            s,
            "# alpha stops at 1/n - {POLE_MARGIN}; the quarton point 1/n is a flagged sentinel row"
        );
    }
    let counts: Vec<String> = spec.junction_counts().iter().map(u32::to_string).collect();
    let _ = writeln!(s, "# n = {}", counts.join(","));
    if let Some(w) = spec.fixed_detuning() {
        let _ = writeln!(s, "# fixed Omega/2pi = {:.12e} Hz", per_two_pi(w));
    }
    let _ = writeln!(s, "# base: {}", describe_params(&spec.base));
    let _ = writeln!(s, "n,{},{}", r.axis.column(), COLUMNS.join(","));
    for row in rows {
        let _ = write!(s, "{},{:.12e},", row.n, r.axis.display(row.axis_value));
        match &row.values {
            Some(v) => {
                for x in [
                    v.gamma4_over_2pi,
                    v.g_prime_minus,
                    v.g_prime_plus,
                    v.omega_minus_over_2pi,
                    v.detuning_over_2pi,
                    v.e_jg,
                    v.i_cg,
                ] {
                    let _ = write!(s, "{x:.12e},");
                }
            }
            None => s.push_str(",,,,,,,"),
        }
        let _ = writeln!(s, "{}", row.flags.join(";"));
    }
    s
}
