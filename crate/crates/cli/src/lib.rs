//! Command-line front end: configuration loading, single-point reports,
//! figure sweeps and the verification suite.

pub mod config;
pub mod report;
pub mod sweep;
pub mod verify;

pub use config::{load_config, parse_config, parse_quantity, Config, ConfigError, Quantity};
pub use report::derive_report;
pub use sweep::{preset, run_sweep, to_csv, Axis, Scale, SweepRange, SweepRow, SweepSpec};
pub use verify::{polynomial_regression, run_verify, Check, Level, VerifyReport};
