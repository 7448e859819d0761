//! Line-oriented `key = value` configuration with unit suffixes.

use std::collections::BTreeMap;
use std::path::Path;

use fourbody_core::constants::{ELEMENTARY_CHARGE, HBAR, TWO_PI};
use fourbody_core::{CircuitError, CircuitParams, CouplerTuning, JpoSpec};
use thiserror::Error;

use crate::sweep::{Axis, Scale, SweepRange};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("conflicting keys: {0}")]
    Conflict(String),
    #[error("invalid value for `{key}`: {source}")]
    Constraint {
        key: &'static str,
        #[source]
        source: CircuitError,
    },
    #[error("invalid sweep: {0}")]
    Sweep(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Capacitance,
    /// Angular frequency; Hz-type units are ordinary frequencies.
    Frequency,
    Energy,
    Current,
    Angle,
    Dimensionless,
    Count,
}

const KEYS: &[(&str, Quantity)] = &[
    ("C_J", Quantity::Capacitance),
    ("C", Quantity::Capacitance),
    ("C_g", Quantity::Capacitance),
    ("n", Quantity::Count),
    ("alpha", Quantity::Dimensionless),
    ("omega", Quantity::Frequency),
    ("E_J_sigma", Quantity::Energy),
    ("E_Jg", Quantity::Energy),
    ("I_cg", Quantity::Current),
    ("omega_minus", Quantity::Frequency),
    ("Omega", Quantity::Frequency),
    ("delta_E_J", Quantity::Energy),
    ("omega_p1", Quantity::Frequency),
    ("omega_p2", Quantity::Frequency),
    ("omega_p3", Quantity::Frequency),
    ("omega_p4", Quantity::Frequency),
    ("theta_p1", Quantity::Angle),
    ("theta_p2", Quantity::Angle),
    ("theta_p3", Quantity::Angle),
    ("theta_p4", Quantity::Angle),
];

const SWEEP_KEYS: &[&str] = &[
    "sweep_axis",
    "sweep_start",
    "sweep_stop",
    "sweep_points",
    "sweep_scale",
    "sweep_n",
];

/// Parse a value with an optional unit suffix into SI (angular frequencies in rad/s).
pub fn parse_quantity(text: &str, kind: Quantity) -> Result<f64, String> {
    let text = text.trim();
    let (two_pi, rest) = match text
        .strip_prefix("2pi*")
        .or_else(|| text.strip_prefix("2π*"))
    {
        Some(r) => (true, r.trim()),
        None => (false, text),
    };
    let split = rest
        .char_indices()
        .find(|&(i, c)| {
            c.is_alphabetic()
                && !(matches!(c, 'e' | 'E')
                    && rest[i + 1..]
                        .starts_with(|d: char| d.is_ascii_digit() || d == '-' || d == '+'))
        })
        .map_or(rest.len(), |(i, _)| i);
    let (number, unit) = (rest[..split].trim(), rest[split..].trim());
    let value: f64 = number
        .parse()
        .map_err(|_| format!("`{number}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("`{number}` is not finite"));
    }
    let scale = unit_scale(unit, kind)?;
    if two_pi && !(kind == Quantity::Frequency && unit.ends_with("Hz")) {
        return Err("the 2pi* prefix applies only to frequencies in Hz".into());
    }
    if kind == Quantity::Count && (value < 0.0 || value.fract() != 0.0) {
        return Err(format!("`{number}` is not a non-negative integer"));
    }
    Ok(value * scale)
}

fn unit_scale(unit: &str, kind: Quantity) -> Result<f64, String> {
    let table: &[(&str, f64)] = match kind {
        Quantity::Capacitance => &[
            ("", 1.0),
            ("F", 1.0),
            ("uF", 1e-6),
            ("nF", 1e-9),
            ("pF", 1e-12),
            ("fF", 1e-15),
            ("aF", 1e-18),
        ],
        Quantity::Frequency => &[
            ("", 1.0),
            ("rad/s", 1.0),
            ("Hz", TWO_PI),
            ("kHz", TWO_PI * 1e3),
            ("MHz", TWO_PI * 1e6),
            ("GHz", TWO_PI * 1e9),
        ],
        Quantity::Energy => &[("", 1.0), ("J", 1.0)],
        Quantity::Current => &[
            ("", 1.0),
            ("A", 1.0),
            ("mA", 1e-3),
            ("uA", 1e-6),
            ("µA", 1e-6),
            ("nA", 1e-9),
        ],
        Quantity::Angle => &[("", 1.0), ("rad", 1.0)],
        Quantity::Dimensionless | Quantity::Count => &[("", 1.0)],
    };
    table
        .iter()
        .find(|(u, _)| *u == unit)
        .map(|(_, s)| *s)
        .ok_or_else(|| format!("unit `{unit}` is not valid for a {kind:?} value"))
}

/// A parsed configuration: circuit parameters and an optional custom sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub params: CircuitParams,
    pub sweep: Option<SweepRange>,
    pub sweep_n: Option<Vec<u32>>,
    /// Every key/value pair as written, for echoing into reports.
    pub entries: Vec<(String, String)>,
}

pub fn load_config(path: &Path) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

struct Entry {
    line: usize,
    raw: String,
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut echo = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Parse {
            line,
            message: format!("expected `key = value`, found `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.iter().any(|(k, _)| *k == key) && !SWEEP_KEYS.contains(&key) {
            return Err(ConfigError::Parse {
                line,
                message: format!("unknown key `{key}`"),
            });
        }
        if value.is_empty() {
            return Err(ConfigError::Parse {
                line,
                message: format!("empty value for `{key}`"),
            });
        }
        if entries.contains_key(key) {
            return Err(ConfigError::Parse {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
        echo.push((key.to_string(), value.to_string()));
        entries.insert(
            key.to_string(),
            Entry {
                line,
                raw: value.to_string(),
            },
        );
    }

    let mut values: BTreeMap<&'static str, f64> = BTreeMap::new();
    for &(key, kind) in KEYS {
        if let Some(e) = entries.get(key) {
            let v = parse_quantity(&e.raw, kind).map_err(|message| ConfigError::Parse {
                line: e.line,
                message: format!("`{key}`: {message}"),
            })?;
            values.insert(key, v);
        }
    }
    let get = |k: &'static str| values.get(k).copied();
    let require = |k: &'static str| get(k).ok_or(ConfigError::Missing(k));

    let jpo = match (get("omega"), get("E_J_sigma")) {
        (Some(w), None) => JpoSpec::Frequency(w),
        (None, Some(e)) => JpoSpec::JosephsonEnergy(e),
        (Some(_), Some(_)) => {
            return Err(ConfigError::Conflict(
                "give exactly one of `omega`, `E_J_sigma`".into(),
            ))
        }
        (None, None) => return Err(ConfigError::Missing("omega")),
    };
    let coupler_keys: Vec<&str> = ["E_Jg", "I_cg", "omega_minus", "Omega"]
        .into_iter()
        .filter(|k| get(k).is_some())
        .collect();
    let coupler = match coupler_keys.as_slice() {
        ["E_Jg"] => CouplerTuning::JosephsonEnergy(require("E_Jg")?),
        ["I_cg"] => {
            CouplerTuning::JosephsonEnergy(require("I_cg")? * HBAR / (2.0 * ELEMENTARY_CHARGE))
        }
        ["omega_minus"] => CouplerTuning::OmegaMinus(require("omega_minus")?),
        ["Omega"] => CouplerTuning::Detuning(require("Omega")?),
        [] => return Err(ConfigError::Missing("Omega")),
        many => {
            return Err(ConfigError::Conflict(format!(
                "give exactly one of {}",
                many.join(", ")
            )))
        }
    };
    let pump_keys = ["omega_p1", "omega_p2", "omega_p3", "omega_p4"];
    let given = pump_keys.iter().filter(|k| get(k).is_some()).count();
    let pump_freqs = match given {
        0 => None,
        4 => Some(pump_keys.map(|k| values[k])),
        _ => {
            return Err(ConfigError::Conflict(
                "give all four of omega_p1..omega_p4 or none".into(),
            ))
        }
    };
    let n = get("n").unwrap_or(1.0);
    let params = CircuitParams {
        c_j: require("C_J")?,
        c: require("C")?,
        c_g: require("C_g")?,
        n: u32::try_from(n as u64).map_err(|_| ConfigError::Sweep("n out of range".into()))?,
        alpha: get("alpha").unwrap_or(0.0),
        jpo,
        coupler,
        delta_e_j: get("delta_E_J"),
        pump_freqs,
        pump_phases: ["theta_p1", "theta_p2", "theta_p3", "theta_p4"]
            .map(|k| get(k).unwrap_or(0.0)),
    };
    params
        .validate()
        .map_err(|source| ConfigError::Constraint {
            key: constraint_key(&source),
            source,
        })?;

    let (sweep, sweep_n) = parse_sweep(&entries)?;
    Ok(Config {
        params,
        sweep,
        sweep_n,
        entries: echo,
    })
}

fn constraint_key(err: &CircuitError) -> &'static str {
    match err {
        CircuitError::InvalidParameter { name, .. } => name,
        _ => "parameters",
    }
}

fn parse_sweep(
    entries: &BTreeMap<String, Entry>,
) -> Result<(Option<SweepRange>, Option<Vec<u32>>), ConfigError> {
    let parse_err = |e: &Entry, message: String| ConfigError::Parse {
        line: e.line,
        message,
    };
    let sweep_n = match entries.get("sweep_n") {
        Some(e) => Some(
            e.raw
                .split(',')
                .map(|t| t.trim().parse::<u32>().ok().filter(|&n| n >= 1))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| {
                    parse_err(
                        e,
                        "`sweep_n` must be a comma-separated list of positive integers".into(),
                    )
                })?,
        ),
        None => None,
    };
    let Some(axis_entry) = entries.get("sweep_axis") else {
        if let Some(k) = SWEEP_KEYS
            .iter()
            .find(|k| **k != "sweep_n" && entries.contains_key(**k))
        {
            return Err(ConfigError::Sweep(format!(
                "`{k}` given without `sweep_axis`"
            )));
        }
        return Ok((None, sweep_n));
    };
    let axis = Axis::from_name(&axis_entry.raw).ok_or_else(|| {
        parse_err(
            axis_entry,
            format!("unknown sweep axis `{}`", axis_entry.raw),
        )
    })?;
    let field = |k: &'static str| entries.get(k).ok_or(ConfigError::Missing(k));
    let quantity = |k: &'static str| -> Result<f64, ConfigError> {
        let e = field(k)?;
        parse_quantity(&e.raw, axis.quantity()).map_err(|m| parse_err(e, format!("`{k}`: {m}")))
    };
    let start = quantity("sweep_start")?;
    let stop = quantity("sweep_stop")?;
    let points_entry = field("sweep_points")?;
    let points: usize = points_entry
        .raw
        .parse()
        .map_err(|_| parse_err(points_entry, "`sweep_points` must be an integer".into()))?;
    let scale = match entries.get("sweep_scale") {
        None => Scale::Linear,
        Some(e) => match e.raw.as_str() {
            "linear" => Scale::Linear,
            "log" => Scale::Log,
            other => {
                return Err(parse_err(
                    e,
                    format!("`sweep_scale` must be linear or log, found `{other}`"),
                ))
            }
        },
    };
    let range = SweepRange {
        axis,
        start,
        stop,
        points,
        scale,
    };
    range.validate().map_err(ConfigError::Sweep)?;
    Ok((Some(range), sweep_n))
}
