use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fourbody_cli::{
    derive_report, load_config, preset, run_sweep, run_verify, to_csv, Level, SweepSpec,
};

#[derive(Parser)]
#[command(
    name = "fourbody",
    version,
    about = "Four-body coupler constants, sweeps and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every derived and effective constant for one circuit.
    Derive { config: PathBuf },
    /// Run a figure preset or the sweep described in the config; write CSV.
    Sweep {
        config: PathBuf,
        #[arg(long, value_parser = ["fig2a", "fig2b", "fig2c", "fig3a", "fig3b"])]
        preset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

const VALIDATION: u8 = 1;
const VERIFICATION: u8 = 2;

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Derive { config } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => return fail(VALIDATION, e),
            };
            match derive_report(&cfg.params) {
                Ok(report) => {
                    print!("{report}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(VALIDATION, e),
            }
        }
        Command::Sweep {
            config,
            preset: name,
            out,
        } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => return fail(VALIDATION, e),
            };
            let spec = match (name, cfg.sweep) {
                (Some(name), _) => preset(&name).expect("preset names are validated by the parser"),
                (None, Some(range)) => SweepSpec {
                    name: "custom".into(),
                    base: cfg.params,
                    range,
                    n_list: cfg.sweep_n,
                },
                (None, None) => {
                    return fail(
                        VALIDATION,
                        "no --preset given and the config has no sweep_axis",
                    )
                }
            };
            let csv = to_csv(&spec, &run_sweep(&spec));
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, csv) {
                        return fail(VALIDATION, format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => print!("{csv}"),
            }
            ExitCode::SUCCESS
        }
        Command::Verify { config, level } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => return fail(VALIDATION, e),
            };
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let report = run_verify(&cfg.params, level);
            println!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(VERIFICATION)
            }
        }
    }
}
