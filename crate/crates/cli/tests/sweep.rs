use fourbody_cli::sweep::{evaluate_point, reference_coupler_frequency, POLE_MARGIN, PRESETS};
use fourbody_cli::{preset, run_sweep, to_csv, Axis, Scale, SweepRange, SweepRow, SweepSpec};
use fourbody_core::{derived_constants, gamma4, CircuitParams, CouplerTuning, JpoSpec};
use proptest::prelude::*;
use std::f64::consts::PI;

fn rows_for(rows: &[SweepRow], n: u32) -> Vec<&SweepRow> {
    rows.iter().filter(|r| r.n == n).collect()
}

fn gamma_of(r: &SweepRow) -> f64 {
    r.values.expect("regular row").gamma4_over_2pi
}

#[test]
fn presets_encode_figure_captions() {
    for name in PRESETS {
        let spec = preset(name).unwrap();
        let b = &spec.base;
        assert_eq!(b.c_j, 500e-15, "{name}");
        assert_eq!(b.c, 0.5e-15, "{name}");
        assert_eq!(b.c_g, 100e-15, "{name}");
        assert_eq!(b.n, 1, "{name}");
        assert_eq!(b.alpha, 0.0, "{name}");
        assert_eq!(b.jpo, JpoSpec::Frequency(2.0 * PI * 10e9), "{name}");
        assert!(spec.range.validate().is_ok(), "{name}");
    }
    let a = preset("fig2a").unwrap();
    assert_eq!(a.range.axis, Axis::CouplerCapacitance);
    assert_eq!(
        (a.range.start, a.range.stop, a.range.points),
        (50e-15, 500e-15, 91)
    );
    assert_eq!(a.fixed_detuning(), Some(2.0 * PI * 20e6));

    let b = preset("fig2b").unwrap();
    assert_eq!(b.range.axis, Axis::CouplerFrequency);
    assert_eq!(b.fixed_detuning(), None);

    let c = preset("fig2c").unwrap();
    assert_eq!(c.range.axis, Axis::JpoFrequency);
    assert_eq!(
        c.base.coupler,
        CouplerTuning::OmegaMinus(reference_coupler_frequency())
    );

    for name in ["fig3a", "fig3b"] {
        let s = preset(name).unwrap();
        assert_eq!(s.range.axis, Axis::AreaRatio);
        assert_eq!((s.range.start, s.range.stop), (0.0, 1.0));
        assert_eq!(s.n_list.as_deref(), Some(&[1, 2, 3, 5, 10][..]));
        assert_eq!(s.fixed_detuning(), Some(2.0 * PI * 20e6));
    }
    assert!(preset("fig4").is_none());
}

#[test]
fn reference_point_lies_inside_frequency_sweeps() {
    let w_minus = reference_coupler_frequency();
    let b = preset("fig2b").unwrap();
    assert!(b.range.start < w_minus && w_minus < b.range.stop);
    let c = preset("fig2c").unwrap();
    assert!(c.range.start < 2.0 * PI * 10e9 && 2.0 * PI * 10e9 < c.range.stop);
}

#[test]
fn coupling_decreases_with_coupler_capacitance() {
    let rows = run_sweep(&preset("fig2a").unwrap());
    assert_eq!(rows.len(), 91);
    let g: Vec<f64> = rows.iter().map(gamma_of).collect();
    assert!(g.windows(2).all(|w| w[1] < w[0]));
    let reference = rows
        .iter()
        .find(|r| (r.axis_value - 100e-15).abs() < 1e-20)
        .unwrap();
    assert!((gamma_of(reference) - 2.392e6).abs() < 1e3);
    assert!(rows
        .iter()
        .all(|r| (r.values.unwrap().detuning_over_2pi - 20e6).abs() < 1e-3));
}

#[test]
fn coupler_frequency_sweep_varies_detuning() {
    let rows = run_sweep(&preset("fig2b").unwrap());
    assert_eq!(rows.len(), 111);
    let det: Vec<f64> = rows
        .iter()
        .map(|r| r.values.unwrap().detuning_over_2pi)
        .collect();
    assert!(det.windows(2).all(|w| w[1] < w[0]));
    assert!(det[0] > 20e6 && *det.last().unwrap() < 20e6);
}

#[test]
fn jpo_frequency_sweep_varies_detuning() {
    let rows = run_sweep(&preset("fig2c").unwrap());
    let det: Vec<f64> = rows
        .iter()
        .map(|r| r.values.unwrap().detuning_over_2pi)
        .collect();
    assert!(det.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn area_ratio_grid_stops_short_of_pole() {
    let spec = preset("fig3a").unwrap();
    let rows = run_sweep(&spec);
    for n in [1u32, 2, 3, 5, 10] {
        let r = rows_for(&rows, n);
        assert_eq!(r.len(), 202);
        let pole = 1.0 / n as f64;
        let (sentinel, grid) = r.split_last().unwrap();
        assert_eq!(sentinel.axis_value, pole);
        assert_eq!(sentinel.flags, vec!["quarton_pole"]);
        assert!((grid.last().unwrap().axis_value - (pole - POLE_MARGIN)).abs() < 1e-15);
        assert!(grid.iter().all(|row| row.axis_value < pole));
    }
}

#[test]
fn sign_change_at_inverse_cube() {
    let rows = run_sweep(&preset("fig3a").unwrap());
    for n in [2u32, 3, 5, 10] {
        let r: Vec<&SweepRow> = rows_for(&rows, n)
            .into_iter()
            .filter(|r| !r.is_singular())
            .collect();
        let step = r[1].axis_value - r[0].axis_value;
        let target = 1.0 / f64::from(n).powi(3);
        let crossings: Vec<(f64, f64)> = r
            .windows(2)
            .filter(|w| gamma_of(w[0]) > 0.0 && gamma_of(w[1]) <= 0.0)
            .map(|w| (w[0].axis_value, w[1].axis_value))
            .collect();
        assert_eq!(crossings.len(), 1, "n = {n}");
        let (lo, hi) = crossings[0];
        assert!(
            lo - step <= target && target <= hi + step,
            "n = {n}: [{lo}, {hi}] vs {target}"
        );
    }
}

#[test]
fn single_junction_is_flat_in_area_ratio() {
    let rows = run_sweep(&preset("fig3a").unwrap());
    let r: Vec<&SweepRow> = rows_for(&rows, 1)
        .into_iter()
        .filter(|r| !r.is_singular())
        .collect();
    assert_eq!(r.len(), 201);
    let first = gamma_of(r[0]);
    for row in &r {
        assert!(
            (gamma_of(row) - first).abs() <= 1e-10 * first.abs(),
            "alpha = {}",
            row.axis_value
        );
    }
}

#[test]
fn near_pole_coupling_exceeds_single_junction() {
    let rows = run_sweep(&preset("fig3a").unwrap());
    let single = gamma_of(rows_for(&rows, 1)[0]).abs();
    for n in [2u32, 3, 5, 10] {
        let pole = 1.0 / n as f64;
        let r: Vec<&SweepRow> = rows_for(&rows, n)
            .into_iter()
            .filter(|r| !r.is_singular())
            .collect();
        let (peak_idx, peak) = r
            .iter()
            .enumerate()
            .map(|(i, row)| (i, gamma_of(row).abs()))
            .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        let at = r[peak_idx].axis_value;
        assert!(at >= 0.9 * pole && at < pole, "n = {n}: peak at {at}");
        assert!(peak > single, "n = {n}");
        let max_current = r
            .iter()
            .map(|row| row.values.unwrap().i_cg)
            .fold(0.0, f64::max);
        for row in &r[peak_idx..] {
            if row.values.unwrap().i_cg >= 0.5 * max_current {
                assert!(
                    gamma_of(row).abs() > single,
                    "n = {n}, alpha = {}",
                    row.axis_value
                );
            }
        }
    }
}

#[test]
fn current_sweep_passes_through_reference_point() {
    let rows = run_sweep(&preset("fig3b").unwrap());
    let i0 = rows_for(&rows, 1)[0].values.unwrap().i_cg;
    assert!((i0 - 0.1341e-6).abs() < 5e-11, "{i0}");
}

#[test]
fn csv_is_deterministic_and_self_describing() {
    for name in PRESETS {
        let spec = preset(name).unwrap();
        let a = to_csv(&spec, &run_sweep(&spec));
        let b = to_csv(&spec, &run_sweep(&spec));
        assert_eq!(a, b, "{name}");
        let header = a.lines().find(|l| !l.starts_with('#')).unwrap();
        assert!(header.starts_with(&format!(
            "n,{},gamma4_over_2pi_Hz",
            spec.range.axis.column()
        )));
        assert!(header.ends_with("I_cg_A,flags"));
        assert!(a.lines().any(|l| l.starts_with("# version")));
        assert!(a.contains(&format!("# sweep = {name}")));
        let columns = header.split(',').count();
        assert!(a
            .lines()
            .filter(|l| !l.starts_with('#'))
            .all(|l| l.split(',').count() == columns));
    }
}

fn reference_params(spec: &SweepSpec, row: &SweepRow) -> CircuitParams {
    let mut base = spec.base.clone();
    base.n = row.n;
    spec.range.axis.apply(&base, row.axis_value)
}

fn assert_flags_match_errors(spec: &SweepSpec, rows: &[SweepRow]) {
    for row in rows {
        let p = reference_params(spec, row);
        let fails = derived_constants(&p).is_err() || gamma4(&p).is_err();
        let sentinel = spec.range.axis == Axis::AreaRatio && row.axis_value == 1.0 / row.n as f64;
        assert_eq!(
            row.is_singular(),
            fails || sentinel,
            "{} at {}",
            row.n,
            row.axis_value
        );
        if let Some(v) = row.values {
            for x in [
                v.gamma4_over_2pi,
                v.g_prime_minus,
                v.g_prime_plus,
                v.omega_minus_over_2pi,
                v.e_jg,
                v.i_cg,
            ] {
                assert!(x.is_finite());
            }
            let (_, warnings) = evaluate_point(&p).unwrap();
            assert_eq!(row.flags, warnings);
        } else {
            assert_eq!(row.flags.len(), 1);
        }
    }
}

#[test]
fn flags_exactly_at_errors_in_presets() {
    for name in PRESETS {
        let spec = preset(name).unwrap();
        assert_flags_match_errors(&spec, &run_sweep(&spec));
    }
    let fig3 = run_sweep(&preset("fig3a").unwrap());
    assert!(fig3.iter().any(|r| r.flags == ["no_solution"]));
}

#[test]
fn junction_count_axis_is_integral() {
    let spec = SweepSpec {
        name: "custom".into(),
        base: CircuitParams::fig2(),
        range: SweepRange {
            axis: Axis::JunctionCount,
            start: 1.0,
            stop: 4.0,
            points: 4,
            scale: Scale::Linear,
        },
        n_list: None,
    };
    let rows = run_sweep(&spec);
    assert_eq!(
        rows.iter().map(|r| r.n).collect::<Vec<_>>(),
        vec![1, 2, 3, 4]
    );
    let g: Vec<f64> = rows.iter().map(gamma_of).collect();
    assert!(g.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn log_grid_hits_endpoints() {
    let range = SweepRange {
        axis: Axis::CouplingCapacitance,
        start: 1e-17,
        stop: 1e-15,
        points: 3,
        scale: Scale::Log,
    };
    let g = range.grid(range.stop);
    assert_eq!(g[0], 1e-17);
    assert!((g[1] - 1e-16).abs() < 1e-30);
    assert_eq!(g[2], 1e-15);
    assert!(SweepRange {
        start: 0.0,
        ..range
    }
    .validate()
    .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn custom_sweeps_are_deterministic_and_flagged_only_at_errors(
        axis_idx in 0usize..5,
        lo in 0.0f64..0.9,
        width in 0.05f64..1.0,
        points in 2usize..12,
        n in 1u32..6,
    ) {
        let axis = [Axis::CouplerCapacitance, Axis::CouplerFrequency, Axis::JpoFrequency, Axis::AreaRatio, Axis::CouplingCapacitance][axis_idx];
        let (start, stop) = match axis {
            Axis::CouplerCapacitance => (10e-15 + lo * 500e-15, 10e-15 + (lo + width) * 500e-15),
            Axis::CouplerFrequency => (2.0 * PI * (8e9 + lo * 4e9), 2.0 * PI * (8e9 + (lo + width) * 4e9)),
            Axis::JpoFrequency => (2.0 * PI * (8e9 + lo * 4e9), 2.0 * PI * (8e9 + (lo + width) * 4e9)),
            Axis::AreaRatio => (lo * 0.5, (lo + width).min(0.99)),
            _ => (lo * 1e-15 + 1e-18, (lo + width) * 1e-15 + 1e-18),
        };
        prop_assume!(start < stop);
        let mut base = CircuitParams::fig2();
        base.n = n;
        if axis == Axis::CouplerFrequency {
            base.coupler = CouplerTuning::OmegaMinus(reference_coupler_frequency());
        }
        let spec = SweepSpec {
            name: "custom".into(),
            base,
            range: SweepRange { axis, start, stop, points, scale: Scale::Linear },
            n_list: None,
        };
        let rows = run_sweep(&spec);
        prop_assert_eq!(to_csv(&spec, &rows), to_csv(&spec, &run_sweep(&spec)));
        assert_flags_match_errors(&spec, &rows);
    }
}
