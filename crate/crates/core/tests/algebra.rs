use std::collections::BTreeSet;

use fourbody_core::algebra::derivation::{fourbody_monomial, fourbody_tag, stationary_hamiltonian};
use fourbody_core::algebra::hamiltonian::{full_hamiltonian, generator};
use fourbody_core::algebra::scalar::{int, real};
use fourbody_core::algebra::*;
use fourbody_core::circuit::expansion::{expansion, ExpansionSet};
use fourbody_core::fock::{represent, FockConfig};
use fourbody_core::symbols::{CoefficientName, Param, ParamValues, MODE_SIGNS};
use proptest::prelude::*;

fn cfg() -> AlgebraConfig {
    AlgebraConfig::default()
}

fn a(mode: Mode) -> OperatorExpr {
    OperatorExpr::annihilate(mode)
}

fn ad(mode: Mode) -> OperatorExpr {
    OperatorExpr::create(mode)
}

fn mono(factors: &[(Mode, u8, u8)]) -> ModeMonomial {
    ModeMonomial::new(factors)
}

/// num/den * g'_+^gp g'_-^gm.
fn gpoly(terms: &[(u8, u8, i64, i64)]) -> GradedCoefficient {
    let mut c = GradedCoefficient::zero();
    for &(gp, gm, num, den) in terms {
        c.add_term(
            CoeffMonomial {
                gp,
                gm,
                ..CoeffMonomial::ONE
            },
            real(num, den),
        );
    }
    c
}

fn times_param(c: &GradedCoefficient, p: Param) -> GradedCoefficient {
    c.mul(&GradedCoefficient::param(p), u8::MAX)
}

fn term(m: ModeMonomial, c: GradedCoefficient) -> OperatorExpr {
    OperatorExpr::monomial(m, c)
}

fn single() -> Mode {
    Mode::Jpo(0)
}

#[test]
fn canonical_commutator() {
    let x = single();
    let r = a(x).multiply(&ad(x), &cfg()).unwrap();
    let expect = OperatorExpr::number(x).add(&OperatorExpr::identity());
    assert_eq!(r, expect);
}

#[test]
fn fourth_power_of_position() {
    let x = single();
    let r = OperatorExpr::position(x).power(4, &cfg()).unwrap();
    let z = PhaseTag::ZERO;
    assert_eq!(
        r.coefficient(&mono(&[(x, 2, 2)]), &z),
        GradedCoefficient::from_int(6)
    );
    assert_eq!(
        r.coefficient(&ModeMonomial::number(x), &z),
        GradedCoefficient::from_int(12)
    );
    assert_eq!(
        r.coefficient(&ModeMonomial::IDENTITY, &z),
        GradedCoefficient::from_int(3)
    );
    assert_eq!(
        r.coefficient(&mono(&[(x, 2, 0)]), &z),
        GradedCoefficient::from_int(6)
    );
    assert_eq!(
        r.coefficient(&mono(&[(x, 3, 1)]), &z),
        GradedCoefficient::from_int(4)
    );
    assert_eq!(r.len(), 9);
}

#[test]
fn fourth_power_diagonal_matches_matrices() {
    let x = single();
    let config = FockConfig::single_mode(10)
        .unwrap()
        .with_safe_occupation(5)
        .unwrap();
    let values = ParamValues::unset();
    let pos = represent(&OperatorExpr::position(x), &values, &config).unwrap();
    let numeric = pos.mul(&pos).mul(&pos).mul(&pos);
    for n in 0..=5usize {
        let nf = n as f64;
        let diag = 6.0 * nf * (nf - 1.0) + 12.0 * nf + 3.0;
        assert!((numeric.matrix[(n, n)].re - diag).abs() < 1e-12, "n = {n}");
    }
}

#[test]
fn squared_ladder_product() {
    let x = single();
    let a2 = a(x).power(2, &cfg()).unwrap();
    let ad2 = ad(x).power(2, &cfg()).unwrap();
    let r = a2.multiply(&ad2, &cfg()).unwrap();
    let expect = term(mono(&[(x, 2, 2)]), GradedCoefficient::one())
        .add(&term(
            ModeMonomial::number(x),
            GradedCoefficient::from_int(4),
        ))
        .add(&term(
            ModeMonomial::IDENTITY,
            GradedCoefficient::from_int(2),
        ));
    assert_eq!(r, expect);

    let config = FockConfig::single_mode(8)
        .unwrap()
        .with_safe_occupation(4)
        .unwrap();
    let values = ParamValues::unset();
    let lhs = represent(&a2, &values, &config)
        .unwrap()
        .mul(&represent(&ad2, &values, &config).unwrap());
    let rhs = represent(&r, &values, &config).unwrap();
    let diff = lhs.safe_block() - rhs.safe_block();
    assert!(diff.iter().all(|z| z.norm() < 1e-12));
}

#[test]
fn commutators_with_generator() {
    let s = generator(&cfg()).unwrap();
    for k in 0..4 {
        let r = a(Mode::Jpo(k)).commutator(&s, &cfg()).unwrap();
        let expect = term(
            ModeMonomial::annihilation(Mode::Plus),
            gpoly(&[(1, 0, -1, 1)]),
        )
        .add(&term(
            ModeMonomial::annihilation(Mode::Minus),
            gpoly(&[(0, 1, -MODE_SIGNS[k], 1)]),
        ));
        assert_eq!(r, expect, "k = {k}");
    }
    let r = a(Mode::Plus).commutator(&s, &cfg()).unwrap();
    let mut expect = OperatorExpr::zero();
    for k in 0..4 {
        expect.add_assign(&term(
            ModeMonomial::annihilation(Mode::Jpo(k)),
            gpoly(&[(1, 0, 1, 1)]),
        ));
    }
    assert_eq!(r, expect);
}

#[test]
fn generator_is_anti_hermitian() {
    let s = generator(&cfg()).unwrap();
    assert_eq!(s.adjoint(), s.scale(&int(-1)));
}

#[test]
fn bch_order_zero_is_identity_map() {
    let s = generator(&cfg()).unwrap();
    let x = OperatorExpr::position(Mode::Minus)
        .power(2, &cfg())
        .unwrap();
    assert_eq!(bch_conjugate(&s, &x, 0, &cfg()).unwrap(), x);
    assert!(matches!(
        bch_conjugate(&s, &x, 5, &cfg()),
        Err(AlgebraError::OrderTooHigh { order: 5, max: 4 })
    ));
}

#[test]
fn bch_series_of_jpo_annihilator() {
    let s = generator(&cfg()).unwrap();
    for k in 0..4 {
        let sk = MODE_SIGNS[k];
        let r = bch_conjugate(&s, &a(Mode::Jpo(k)), 4, &cfg()).unwrap();
        let mut expect = a(Mode::Jpo(k));
        expect.add_assign(&term(
            ModeMonomial::annihilation(Mode::Plus),
            gpoly(&[(1, 0, -1, 1), (3, 0, 2, 3)]),
        ));
        expect.add_assign(&term(
            ModeMonomial::annihilation(Mode::Minus),
            gpoly(&[(0, 1, -sk, 1), (0, 3, 2 * sk, 3)]),
        ));
        for l in 0..4 {
            let sl = MODE_SIGNS[l];
            expect.add_assign(&term(
                ModeMonomial::annihilation(Mode::Jpo(l)),
                gpoly(&[(2, 0, -1, 2), (4, 0, 1, 6)]),
            ));
            expect.add_assign(&term(
                ModeMonomial::annihilation(Mode::Jpo(l)),
                gpoly(&[(0, 2, -sk * sl, 2), (0, 4, sk * sl, 6)]),
            ));
        }
        assert_eq!(r, expect, "k = {k}");
    }
}

#[test]
fn bch_series_of_coupler_annihilator() {
    let s = generator(&cfg()).unwrap();
    let r = bch_conjugate(&s, &a(Mode::Minus), 4, &cfg()).unwrap();
    let mut expect = term(
        ModeMonomial::annihilation(Mode::Minus),
        gpoly(&[(0, 0, 1, 1), (0, 2, -2, 1), (0, 4, 2, 3)]),
    );
    for k in 0..4 {
        expect.add_assign(&term(
            ModeMonomial::annihilation(Mode::Jpo(k)),
            gpoly(&[(0, 1, MODE_SIGNS[k], 1), (0, 3, -2 * MODE_SIGNS[k], 3)]),
        ));
    }
    assert_eq!(r, expect);
}

#[test]
fn frame_rotation_tags() {
    let n = OperatorExpr::number(Mode::Jpo(2));
    assert_eq!(rotate_frame(&n), n);

    let four = term(fourbody_monomial(), GradedCoefficient::one());
    let rotated = rotate_frame(&four);
    assert_eq!(
        rotated.coefficient(&fourbody_monomial(), &fourbody_tag()),
        GradedCoefficient::one()
    );
    assert!(fourbody_tag().is_stationary());

    for k in 0..4 {
        let squeeze = mono(&[(Mode::Jpo(k), 0, 2)]);
        let driven = OperatorExpr::tagged(squeeze, PhaseTag::pump(k, 1), GradedCoefficient::one());
        let r = rotate_frame(&driven);
        let ((_, tag), _) = r.terms().next().unwrap();
        assert!(tag.is_zero(), "k = {k}: {tag}");
    }
}

#[test]
fn rotating_wave_filter() {
    let keep = rotate_frame(&term(fourbody_monomial(), GradedCoefficient::one()));
    assert_eq!(rwa_filter(&keep), keep);
    let hop = rotate_frame(&term(
        mono(&[(Mode::Jpo(0), 1, 0), (Mode::Plus, 0, 1)]),
        GradedCoefficient::one(),
    ));
    assert!(rwa_filter(&hop).is_empty());
    let all_create = mono(&[
        (Mode::Jpo(0), 1, 0),
        (Mode::Jpo(1), 1, 0),
        (Mode::Jpo(2), 1, 0),
        (Mode::Jpo(3), 1, 0),
    ]);
    assert!(rwa_filter(&rotate_frame(&term(all_create, GradedCoefficient::one()))).is_empty());
}

#[test]
fn cancellation_condition() {
    let det = determine_g_primes().unwrap();
    assert!(det
        .g_prime_plus
        .equivalent(&RationalForm::g_plus_closed_form()));
    assert!(det
        .g_prime_minus
        .equivalent(&RationalForm::g_minus_closed_form()));
    assert!(!det
        .g_prime_plus
        .equivalent(&RationalForm::g_minus_closed_form()));
    let families: BTreeSet<_> = det.residual_families();
    let expect: BTreeSet<_> = [
        ResidualFamily::PlusKerrPump,
        ResidualFamily::MinusKerrPump,
        ResidualFamily::CouplerNonlinearity,
    ]
    .into_iter()
    .collect();
    assert_eq!(families, expect);
    for r in &det.residuals {
        let expected_reason = match r.family {
            ResidualFamily::CouplerNonlinearity => DropReason::CouplerVacuum,
            _ => DropReason::CoherentState,
        };
        assert_eq!(r.dropped_by, expected_reason);
    }
    // Three terms for each of the four JPOs on the minus side, two on the plus side.
    assert_eq!(det.residuals.len(), 4 * 2 + 4 * 3);
}

fn derivation() -> Derivation {
    derive_effective_hamiltonian(&cfg()).unwrap()
}

#[test]
fn derived_coefficients_match_rederived_table() {
    let d = derivation();
    for cmp in d.compare(ExpansionSet::Rederived) {
        assert!(cmp.matches(), "{}: {}", cmp.name.label(), cmp.difference());
    }
    d.check_against(|n| expansion(ExpansionSet::Rederived, n))
        .unwrap();
}

#[test]
fn published_table_differs_in_known_coefficients() {
    let d = derivation();
    let differing: BTreeSet<String> = d
        .compare(ExpansionSet::Published)
        .into_iter()
        .filter(|c| !c.matches())
        .map(|c| c.name.label())
        .collect();
    for same in [
        "K_prime_plus",
        "K_prime_minus",
        "gamma4",
        "gamma2_plusminus",
    ] {
        assert!(!differing.contains(same), "{same}");
    }
    for differs in [
        "Delta_1",
        "K_prime",
        "pump",
        "Delta_plus",
        "Delta_minus",
        "chi_12",
        "gamma2_Jplus",
        "gamma2_Jminus",
    ] {
        assert!(differing.contains(differs), "{differs}");
    }
    let err = d
        .check_against(|n| expansion(ExpansionSet::Published, n))
        .unwrap_err();
    assert!(matches!(err, AlgebraError::DerivationRegression { .. }));
}

#[test]
fn corrupted_table_is_named() {
    let d = derivation();
    let err = d
        .check_against(|n| {
            let mut t = expansion(ExpansionSet::Rederived, n);
            if n == CoefficientName::KPrime {
                t[0].num += 1;
            }
            t
        })
        .unwrap_err();
    match err {
        AlgebraError::DerivationRegression { coefficient, .. } => {
            assert_eq!(coefficient, "K_prime")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn fourbody_term_of_coupler_quartic() {
    let s = generator(&cfg()).unwrap();
    let x4 = OperatorExpr::position(Mode::Minus)
        .power(4, &cfg())
        .unwrap();
    let r = rwa_filter(&rotate_frame(&bch_conjugate(&s, &x4, 4, &cfg()).unwrap()));
    assert_eq!(
        r.coefficient(&fourbody_monomial(), &fourbody_tag()),
        gpoly(&[(0, 4, 24, 1)])
    );
}

#[test]
fn extracted_coefficients() {
    let d = derivation();
    let four = extract_coefficient(&d.hamiltonian, &fourbody_monomial(), &fourbody_tag());
    assert_eq!(
        four,
        times_param(&gpoly(&[(0, 4, -2, 1)]), Param::KerrMinus)
    );
    assert_eq!(
        d.coefficient(CoefficientName::Gamma4),
        &times_param(&gpoly(&[(0, 4, 2, 1)]), Param::KerrMinus)
    );

    assert!(
        extract_coefficient(&OperatorExpr::zero(), &fourbody_monomial(), &fourbody_tag()).is_zero()
    );

    let cross = mono(&[(Mode::Jpo(0), 1, 1), (Mode::Plus, 1, 1)]);
    let c = extract_coefficient(&d.hamiltonian, &cross, &PhaseTag::ZERO);
    assert_eq!(
        c.g_part(2, 0),
        times_param(&gpoly(&[(0, 0, -2, 1)]), Param::Kerr)
    );
    assert_eq!(c.g_part(0, 0), GradedCoefficient::zero());
}

#[test]
fn self_kerr_and_cross_kerr_polynomials() {
    let d = derivation();
    let k_prime = times_param(
        &gpoly(&[
            (0, 0, 1, 1),
            (2, 0, -2, 1),
            (0, 2, -2, 1),
            (4, 0, 13, 6),
            (0, 4, 13, 6),
            (2, 2, 3, 1),
        ]),
        Param::Kerr,
    );
    assert_eq!(
        d.coefficient(CoefficientName::KPrime).g_part(0, 0),
        k_prime.g_part(0, 0)
    );
    for (gp, gm) in [(2, 0), (0, 2), (4, 0), (2, 2)] {
        assert_eq!(
            d.coefficient(CoefficientName::KPrime).g_part(gp, gm),
            k_prime.g_part(gp, gm)
        );
    }
    for (k, l) in [(0, 1), (0, 2), (2, 3)] {
        let chi = d.coefficient(CoefficientName::Chi(k, l));
        let sign = MODE_SIGNS[k] * MODE_SIGNS[l];
        assert_eq!(
            chi.g_part(2, 2),
            times_param(&gpoly(&[(0, 0, 2 * sign, 1)]), Param::Kerr)
        );
        assert_eq!(
            chi.g_part(0, 4),
            times_param(&gpoly(&[(0, 0, 1, 1)]), Param::Kerr)
                .add(&times_param(&gpoly(&[(0, 0, 2, 1)]), Param::KerrMinus))
        );
    }
}

#[test]
fn hamiltonians_are_hermitian() {
    assert!(full_hamiltonian(&cfg()).unwrap().is_hermitian());
    assert!(stationary_hamiltonian(&cfg()).unwrap().is_hermitian());
    assert!(derivation().hamiltonian.is_hermitian());
}

#[test]
fn fourbody_phase_vector() {
    let tag = fourbody_tag();
    let h = fourbody_monomial();
    let d = derivation();
    let tags: Vec<PhaseTag> = d
        .hamiltonian
        .terms()
        .filter(|((m, _), _)| *m == h)
        .map(|((_, t), _)| *t)
        .collect();
    assert_eq!(tags, vec![tag]);
    let half = num_rational::Ratio::new(1, 2);
    assert_eq!(tag.phase, [half, half, -half, -half]);
    let common_shift: num_rational::Ratio<i64> = tag.phase.iter().sum();
    assert_eq!(common_shift, num_rational::Ratio::from_integer(0));
}

#[test]
fn vacuum_projection_reduces_to_jpo_hamiltonian() {
    let d = derivation();
    let reduced = project_coupler_vacuum(&d.hamiltonian);
    for ((m, t), c) in reduced.terms() {
        assert!(!m.touches(Mode::Plus) && !m.touches(Mode::Minus));
        let allowed = m.is_identity()
            || (0..4).any(|k| {
                *m == ModeMonomial::number(Mode::Jpo(k))
                    || *m == mono(&[(Mode::Jpo(k), 2, 2)])
                    || *m == mono(&[(Mode::Jpo(k), 2, 0)])
                    || *m == mono(&[(Mode::Jpo(k), 0, 2)])
            })
            || *m == fourbody_monomial()
            || *m == fourbody_monomial().adjoint()
            || (m.degree() == 4 && m.net_change().iter().all(|&x| x == 0));
        assert!(allowed, "{m} | {t} | {c}");
    }
    let d0 = reduced.coefficient(&ModeMonomial::number(Mode::Jpo(0)), &PhaseTag::ZERO);
    assert_eq!(&d0, d.coefficient(CoefficientName::Delta(0)));
}

#[test]
fn golden_effective_hamiltonian() {
    let text = derivation().hamiltonian.to_canonical_text();
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/effective_hamiltonian.txt"
    );
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(path).expect("golden file present");
    assert_eq!(text, golden);
}

#[test]
fn degree_overflow_policy() {
    let x = OperatorExpr::position(single());
    let strict = AlgebraConfig {
        max_degree: 4,
        ..cfg()
    };
    assert!(matches!(
        x.power(5, &strict),
        Err(AlgebraError::DegreeOverflow { .. })
    ));
    let lenient = AlgebraConfig {
        max_degree: 4,
        overflow: OverflowPolicy::Drop,
        ..cfg()
    };
    let r = x.power(5, &lenient).unwrap();
    assert!(r.max_degree() <= 4);
}

#[test]
fn coefficient_truncation_at_configured_order() {
    let g = gpoly(&[(1, 0, 1, 1)]).add(&gpoly(&[(0, 1, 1, 1)]));
    let mut p = GradedCoefficient::one();
    for _ in 0..5 {
        p = p.mul(&g, 4);
    }
    assert!(p.is_zero());
    let four = gpoly(&[(2, 0, 1, 1)]).mul(&gpoly(&[(0, 2, 1, 1)]), 4);
    assert_eq!(four, gpoly(&[(2, 2, 1, 1)]));
}

fn mode_strategy() -> impl Strategy<Value = Mode> {
    (0usize..6).prop_map(Mode::from_index)
}

prop_compose! {
    fn small_expr()(terms in prop::collection::vec(
        (prop::collection::vec((mode_strategy(), 0u8..=1, 0u8..=1), 0..=2), -4i64..=4, 1i64..=3, 0u8..=1),
        1..=3,
    )) -> OperatorExpr {
        let mut e = OperatorExpr::zero();
        for (factors, num, den, gp) in terms {
            let mut m = ModeMonomial::IDENTITY;
            for (mode, c, d) in factors {
                m.powers[mode.index()].0 += c;
                m.powers[mode.index()].1 += d;
            }
            e.add_term(m, PhaseTag::ZERO, &gpoly(&[(gp, 0, num, den)]));
        }
        e
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn self_commutator_vanishes(x in small_expr()) {
        prop_assert!(x.commutator(&x, &cfg()).unwrap().is_empty());
    }

    #[test]
    fn commutator_antisymmetric(x in small_expr(), y in small_expr()) {
        let xy = x.commutator(&y, &cfg()).unwrap();
        let yx = y.commutator(&x, &cfg()).unwrap();
        prop_assert!(xy.add(&yx).is_empty());
    }

    #[test]
    fn adjoint_reverses_products(x in small_expr(), y in small_expr()) {
        let lhs = x.multiply(&y, &cfg()).unwrap().adjoint();
        let rhs = y.adjoint().multiply(&x.adjoint(), &cfg()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bch_preserves_products_to_order(x in small_expr()) {
        let wide = AlgebraConfig { max_degree: 16, ..cfg() };
        let s = generator(&wide).unwrap();
        let conj = |e: &OperatorExpr| bch_conjugate(&s, e, 4, &wide).unwrap();
        let product = conj(&x.adjoint()).multiply(&conj(&x), &wide).unwrap();
        let direct = conj(&x.adjoint().multiply(&x, &wide).unwrap());
        prop_assert!(product.sub(&direct).truncated(4).is_empty());
    }
}
