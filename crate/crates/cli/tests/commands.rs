use fourbody_cli::{derive_report, polynomial_regression, run_verify, Level};
use fourbody_core::circuit::expansion::{expansion, ExpansionSet};
use fourbody_core::{CircuitParams, CoefficientName};
use std::path::PathBuf;
use std::process::Command;

const FIG2: &str =
    "C_J = 500 fF\nC = 0.5 fF\nC_g = 100 fF\nn = 1\nalpha = 0\nomega = 10 GHz\nOmega = 20 MHz\n";

fn field(report: &str, key: &str) -> f64 {
    let line = report
        .lines()
        .find(|l| l.starts_with(&format!("{key}:")))
        .unwrap_or_else(|| panic!("no {key}"));
    line.split_whitespace().nth(1).unwrap().parse().unwrap()
}

#[test]
fn derive_reference_circuit() {
    let r = derive_report(&CircuitParams::fig2()).unwrap();
    assert!((field(&r, "gamma4_over_2pi") - 2.4e6).abs() < 0.05 * 2.4e6);
    assert!((field(&r, "g_prime_minus") - 0.28).abs() < 0.05 * 0.28);
    assert!((field(&r, "I_cg") - 0.134e-6).abs() < 0.001e-6);
    assert!((field(&r, "K_over_2pi") - 38.74e6).abs() < 0.01e6);
    for key in ["Delta_1", "K_prime", "gamma4", "chi_12", "gamma2_plusminus"] {
        assert!(
            r.lines().any(|l| l.starts_with(&format!("{key}:"))),
            "{key}"
        );
    }
    assert!(r.contains("# warnings\nnone"));
}

#[test]
fn derive_decoupled_circuit() {
    let p = CircuitParams {
        c: 0.0,
        ..CircuitParams::fig2()
    };
    let r = derive_report(&p).unwrap();
    assert_eq!(field(&r, "gamma4_over_2pi"), 0.0);
    assert!(r.contains("omega_plus_over_2pi: inf Hz"));
    assert!(r.contains("decoupled"));
}

#[test]
fn corrupted_k_prime_is_named() {
    let check = polynomial_regression(|name| {
        let mut terms = expansion(ExpansionSet::Rederived, name);
        if name == CoefficientName::KPrime {
            terms[0].num += 1;
        }
        terms
    });
    assert!(!check.passed);
    assert!(check.detail.contains("K_prime"), "{}", check.detail);
    assert!(polynomial_regression(|n| expansion(ExpansionSet::Rederived, n)).passed);
}

#[test]
fn published_table_is_reported_as_regression() {
    let check = polynomial_regression(|n| expansion(ExpansionSet::Published, n));
    assert!(!check.passed);
}

#[test]
fn fast_verification_passes() {
    let start = std::time::Instant::now();
    let report = run_verify(&CircuitParams::fig2(), Level::Fast);
    assert!(report.passed(), "{report}");
    assert_eq!(report.checks.len(), 5);
    assert!(report.notes.iter().any(|n| n.contains("K_prime")));
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn full_verification_passes() {
    let report = run_verify(&CircuitParams::fig2(), Level::Full);
    assert!(report.passed(), "{report}");
    let text = report.to_string();
    assert!(text.contains("check four_body_oracle: PASS (relative deviation -0.19"));
    assert!(text.contains("exponent vs C 1.9"));
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fourbody-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn fourbody(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fourbody"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn binary_exit_codes() {
    let good = write_config("good.conf", FIG2);
    let out = fourbody(&["derive", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("gamma4_over_2pi: 2.392"));

    let bad = write_config("bad.conf", &FIG2.replace("C_J = 500 fF\n", ""));
    let out = fourbody(&["derive", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("C_J"));

    assert_eq!(
        fourbody(&["derive", "/nonexistent/config"]).status.code(),
        Some(1)
    );
    assert_eq!(
        fourbody(&["sweep", good.to_str().unwrap()]).status.code(),
        Some(1)
    );

    let out = fourbody(&["verify", good.to_str().unwrap(), "--level", "fast"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("result: PASS"));
}

#[test]
fn binary_sweep_writes_identical_files() {
    let good = write_config("sweep.conf", FIG2);
    let dir = good.parent().unwrap();
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    for out in [&a, &b] {
        let status = fourbody(&[
            "sweep",
            good.to_str().unwrap(),
            "--preset",
            "fig3a",
            "--out",
            out.to_str().unwrap(),
        ])
        .status;
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let out = fourbody(&[
        "sweep",
        good.to_str().unwrap(),
        "--preset",
        "fig2a",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let custom = write_config(
        "custom.conf",
        &format!(
            "{FIG2}sweep_axis = C\nsweep_start = 0.1 fF\nsweep_stop = 1 fF\nsweep_points = 4\n"
        ),
    );
    let out = fourbody(&["sweep", custom.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 5);
}
