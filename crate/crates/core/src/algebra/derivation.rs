//! Mechanical derivation of the effective Hamiltonian: conjugation by e^S,
//! rotating frame, rotating-wave filter and the cancellation condition.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use super::coefficient::GradedCoefficient;
use super::expr::{AlgebraConfig, OperatorExpr, TermKey};
use super::hamiltonian::{frame_generator, full_hamiltonian, generator, substitute_couplings};
use super::hamiltonian::{minus_denominator, plus_denominator};
use super::monomial::{Mode, ModeMonomial};
use super::phase::PhaseTag;
use super::scalar::{int, rational, real, Scalar};
use super::transform::{bch_conjugate, rotate_frame, rwa_filter};
use super::AlgebraError;
use crate::circuit::expansion::{expansion, ExpansionSet, ExpansionTerm};
use crate::symbols::{CoefficientName, Param};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn mode(self) -> Mode {
        match self {
            Branch::Plus => Mode::Plus,
            Branch::Minus => Mode::Minus,
        }
    }

    fn coupling(self) -> Param {
        match self {
            Branch::Plus => Param::GPlus,
            Branch::Minus => Param::GMinus,
        }
    }

    fn g_prime_exponents(self) -> (u8, u8) {
        match self {
            Branch::Plus => (1, 0),
            Branch::Minus => (0, 1),
        }
    }
}

/// numerator / denominator with both parts free of g'.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalForm {
    pub numerator: GradedCoefficient,
    pub denominator: GradedCoefficient,
}

impl RationalForm {
    /// Cross-multiplied equality.
    pub fn equivalent(&self, other: &RationalForm) -> bool {
        let lhs = self.numerator.mul(&other.denominator, u8::MAX);
        let rhs = other.numerator.mul(&self.denominator, u8::MAX);
        lhs == rhs
    }

    pub fn g_plus_closed_form() -> Self {
        RationalForm {
            numerator: GradedCoefficient::param(Param::GPlus),
            denominator: plus_denominator(),
        }
    }

    pub fn g_minus_closed_form() -> Self {
        RationalForm {
            numerator: GradedCoefficient::param(Param::GMinus),
            denominator: minus_denominator(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResidualFamily {
    /// g'_+ (K a_k†² - p) a_k a_+
    PlusKerrPump,
    /// g'_- (K a_k†² - p) a_k a_-
    MinusKerrPump,
    /// g'_- K_- a_k† a_-† a_-²
    CouplerNonlinearity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DropReason {
    /// (K a†² - p) a annihilates the coherent states |±sqrt(p/K)>.
    CoherentState,
    /// a_-² annihilates the coupler vacuum.
    CouplerVacuum,
}

/// First-order term left over after the cancellation condition; kept and
/// flagged rather than deleted.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualTerm {
    pub branch: Branch,
    pub jpo: usize,
    pub monomial: ModeMonomial,
    pub tag: PhaseTag,
    pub coefficient: GradedCoefficient,
    pub family: ResidualFamily,
    pub dropped_by: DropReason,
}

#[derive(Clone, Debug)]
pub struct GPrimeDetermination {
    pub g_prime_plus: RationalForm,
    pub g_prime_minus: RationalForm,
    pub residuals: Vec<ResidualTerm>,
}

impl GPrimeDetermination {
    pub fn residual_families(&self) -> BTreeSet<ResidualFamily> {
        self.residuals.iter().map(|r| r.family).collect()
    }
}

fn combined_order(c: &GradedCoefficient) -> GradedCoefficient {
    c.filtered(|m| m.order() + m.exponent(Param::GPlus) + m.exponent(Param::GMinus) <= 1)
}

/// Class tag e^{i Theta_{k±}}: frequency w_pk/2 - w_±.
fn hop_frequency(k: usize, branch: Branch) -> [num_rational::Ratio<i64>; 6] {
    let mut f = PhaseTag::ZERO.freq;
    f[k] = rational(1, 2);
    f[branch.mode().index()] = rational(-1, 1);
    f
}

/// Rotated first-order Hamiltonian, counting g and g' jointly.
pub fn first_order_rotated() -> Result<OperatorExpr, AlgebraError> {
    let config = AlgebraConfig {
        max_order: 1,
        ..AlgebraConfig::default()
    };
    let h = full_hamiltonian(&config)?;
    let s = generator(&config)?;
    let conjugated = bch_conjugate(&s, &h, 1, &config)?.map_coefficients(combined_order);
    Ok(rotate_frame(&conjugated).add(&frame_generator()))
}

pub fn determine_g_primes() -> Result<GPrimeDetermination, AlgebraError> {
    let rotated = first_order_rotated()?;
    let mut residuals = Vec::new();
    let mut forms: BTreeMap<Branch, RationalForm> = BTreeMap::new();

    for branch in [Branch::Plus, Branch::Minus] {
        for k in 0..4 {
            let freq = hop_frequency(k, branch);
            let jpo = Mode::Jpo(k);
            let coupler = branch.mode();
            let hop = ModeMonomial::new(&[(jpo, 1, 0), (coupler, 0, 1)]);
            let mut hop_coefficient = None;
            for ((m, t), c) in rotated.terms() {
                if t.freq != freq {
                    continue;
                }
                if *m == hop {
                    hop_coefficient = Some(c.clone());
                    continue;
                }
                let family = classify_residual(m, c, k, branch).ok_or_else(|| {
                    AlgebraError::InternalConsistency(format!(
                        "unexpected first-order term {m} ({c})"
                    ))
                })?;
                let dropped_by = match family {
                    ResidualFamily::CouplerNonlinearity => DropReason::CouplerVacuum,
                    _ => DropReason::CoherentState,
                };
                residuals.push(ResidualTerm {
                    branch,
                    jpo: k,
                    monomial: *m,
                    tag: *t,
                    coefficient: c.clone(),
                    family,
                    dropped_by,
                });
            }
            let c = hop_coefficient.ok_or_else(|| {
                AlgebraError::InternalConsistency(format!("no hopping term for JPO {}", k + 1))
            })?;
            let (gp, gm) = branch.g_prime_exponents();
            let slope = c.g_part(gp, gm);
            let offset = c.g_part(0, 0);
            let reassembled = offset.add(&slope.mul(&graded(gp, gm), u8::MAX));
            if reassembled != c || slope.is_zero() || !offset.uses_param(branch.coupling()) {
                return Err(AlgebraError::InternalConsistency(format!(
                    "hopping coefficient {c} cannot be cancelled"
                )));
            }
            let form = RationalForm {
                numerator: offset.scale(&-Scalar::one()),
                denominator: slope,
            };
            if let Some(existing) = forms.get(&branch) {
                if !existing.equivalent(&form) {
                    return Err(AlgebraError::InternalConsistency(
                        "cancellation condition differs between JPOs".into(),
                    ));
                }
            } else {
                forms.insert(branch, form);
            }
        }
    }
    Ok(GPrimeDetermination {
        g_prime_plus: forms.remove(&Branch::Plus).expect("plus branch solved"),
        g_prime_minus: forms.remove(&Branch::Minus).expect("minus branch solved"),
        residuals,
    })
}

fn graded(gp: u8, gm: u8) -> GradedCoefficient {
    let mut c = GradedCoefficient::one();
    for _ in 0..gp {
        c = c.mul(&GradedCoefficient::g_plus(), u8::MAX);
    }
    for _ in 0..gm {
        c = c.mul(&GradedCoefficient::g_minus(), u8::MAX);
    }
    c
}

fn classify_residual(
    m: &ModeMonomial,
    c: &GradedCoefficient,
    k: usize,
    branch: Branch,
) -> Option<ResidualFamily> {
    let jpo = Mode::Jpo(k);
    let coupler = branch.mode();
    let kerr_pump = match branch {
        Branch::Plus => ResidualFamily::PlusKerrPump,
        Branch::Minus => ResidualFamily::MinusKerrPump,
    };
    if *m == ModeMonomial::new(&[(jpo, 2, 1), (coupler, 0, 1)]) && c.uses_param(Param::Kerr) {
        return Some(kerr_pump);
    }
    if *m == ModeMonomial::new(&[(jpo, 0, 1), (coupler, 0, 1)]) && c.uses_param(Param::Pump) {
        return Some(kerr_pump);
    }
    if branch == Branch::Minus
        && *m == ModeMonomial::new(&[(jpo, 1, 0), (Mode::Minus, 1, 2)])
        && c.uses_param(Param::KerrMinus)
    {
        return Some(ResidualFamily::CouplerNonlinearity);
    }
    None
}

/// Effective Hamiltonian with its named coefficients.
#[derive(Clone, Debug)]
pub struct Derivation {
    /// Stationary Hamiltonian after substituting g_± = g'_± (denominator).
    pub hamiltonian: OperatorExpr,
    pub coefficients: BTreeMap<CoefficientName, GradedCoefficient>,
    pub g_primes: GPrimeDetermination,
}

/// Tag of the four-body term a1† a2† a3 a4.
pub fn fourbody_tag() -> PhaseTag {
    let h = rational(1, 2);
    PhaseTag::new(
        [h, h, -h, -h, rational(0, 1), rational(0, 1)],
        [h, h, -h, -h],
    )
}

pub fn fourbody_monomial() -> ModeMonomial {
    ModeMonomial::new(&[
        (Mode::Jpo(0), 1, 0),
        (Mode::Jpo(1), 1, 0),
        (Mode::Jpo(2), 0, 1),
        (Mode::Jpo(3), 0, 1),
    ])
}

pub fn stationary_hamiltonian(config: &AlgebraConfig) -> Result<OperatorExpr, AlgebraError> {
    let h = full_hamiltonian(config)?;
    let s = generator(config)?;
    let conjugated = bch_conjugate(&s, &h, config.max_order, config)?;
    let rotated = rotate_frame(&conjugated).add(&frame_generator());
    Ok(substitute_couplings(
        &rwa_filter(&rotated),
        config.max_order,
    ))
}

pub fn derive_effective_hamiltonian(config: &AlgebraConfig) -> Result<Derivation, AlgebraError> {
    let g_primes = determine_g_primes()?;
    let hamiltonian = stationary_hamiltonian(config)?;
    let zero = PhaseTag::ZERO;
    let mut ex = Extractor {
        hamiltonian: &hamiltonian,
        used: BTreeSet::new(),
        coefficients: BTreeMap::new(),
    };
    let jpo = Mode::Jpo;

    for k in 0..4 {
        ex.uniform(
            CoefficientName::Delta(k),
            &[(ModeMonomial::number(jpo(k)), zero)],
            int(1),
        )?;
    }
    let self_kerr: Vec<_> = (0..4)
        .map(|k| (ModeMonomial::new(&[(jpo(k), 2, 2)]), zero))
        .collect();
    ex.uniform(CoefficientName::KPrime, &self_kerr, int(-2))?;
    let squeeze: Vec<_> = (0..4)
        .flat_map(|k| {
            [
                (ModeMonomial::new(&[(jpo(k), 0, 2)]), zero),
                (ModeMonomial::new(&[(jpo(k), 2, 0)]), zero),
            ]
        })
        .collect();
    ex.uniform(CoefficientName::PumpAmplitude, &squeeze, int(2))?;
    for (name, mode) in [
        (CoefficientName::DeltaPlus, Mode::Plus),
        (CoefficientName::DeltaMinus, Mode::Minus),
    ] {
        ex.uniform(name, &[(ModeMonomial::number(mode), zero)], int(1))?;
    }
    for (name, mode) in [
        (CoefficientName::KPrimePlus, Mode::Plus),
        (CoefficientName::KPrimeMinus, Mode::Minus),
    ] {
        ex.uniform(name, &[(ModeMonomial::new(&[(mode, 2, 2)]), zero)], int(-2))?;
    }
    let four = fourbody_monomial();
    let tag = fourbody_tag();
    let forward = ex.take(four, tag);
    let backward = ex.take(four.adjoint(), tag.neg());
    if forward != backward.conj() {
        return Err(AlgebraError::InternalConsistency(
            "four-body term is not Hermitian".into(),
        ));
    }
    ex.coefficients
        .insert(CoefficientName::Gamma4, forward.scale(&int(-1)));
    for k in 0..4 {
        for l in k + 1..4 {
            let m = ModeMonomial::new(&[(jpo(k), 1, 1), (jpo(l), 1, 1)]);
            ex.uniform(CoefficientName::Chi(k, l), &[(m, zero)], int(-1))?;
        }
    }
    for (name, mode) in [
        (CoefficientName::Gamma2JPlus, Mode::Plus),
        (CoefficientName::Gamma2JMinus, Mode::Minus),
    ] {
        let keys: Vec<_> = (0..4)
            .map(|k| (ModeMonomial::new(&[(jpo(k), 1, 1), (mode, 1, 1)]), zero))
            .collect();
        ex.uniform(name, &keys, int(-1))?;
    }
    let both = ModeMonomial::new(&[(Mode::Plus, 1, 1), (Mode::Minus, 1, 1)]);
    ex.uniform(
        CoefficientName::Gamma2PlusMinus,
        &[(both, zero)],
        real(-1, 4),
    )?;

    for ((m, t), c) in hamiltonian.terms() {
        if !m.is_identity() && !ex.used.contains(&(*m, *t)) {
            return Err(AlgebraError::InternalConsistency(format!(
                "unclassified stationary term {m} [{t}] = {c}"
            )));
        }
    }
    let coefficients = ex.coefficients;
    Ok(Derivation {
        hamiltonian,
        coefficients,
        g_primes,
    })
}

struct Extractor<'a> {
    hamiltonian: &'a OperatorExpr,
    used: BTreeSet<TermKey>,
    coefficients: BTreeMap<CoefficientName, GradedCoefficient>,
}

impl Extractor<'_> {
    fn take(&mut self, m: ModeMonomial, tag: PhaseTag) -> GradedCoefficient {
        self.used.insert((m, tag));
        self.hamiltonian.coefficient(&m, &tag)
    }

    /// Records `factor` times the coefficient shared by all `keys`.
    fn uniform(
        &mut self,
        name: CoefficientName,
        keys: &[(ModeMonomial, PhaseTag)],
        factor: Scalar,
    ) -> Result<(), AlgebraError> {
        let values: Vec<GradedCoefficient> = keys.iter().map(|&(m, t)| self.take(m, t)).collect();
        if values.windows(2).any(|w| w[0] != w[1]) {
            return Err(AlgebraError::InternalConsistency(format!(
                "{name} differs between equivalent monomials"
            )));
        }
        self.coefficients.insert(name, values[0].scale(&factor));
        Ok(())
    }
}

/// Exact polynomial of a tabulated expansion.
pub fn reference_polynomial(terms: &[ExpansionTerm]) -> GradedCoefficient {
    let mut out = GradedCoefficient::zero();
    for term in terms {
        let mut c = GradedCoefficient::param(term.param).scale(&real(term.num, term.den));
        c = c.mul(&graded(term.gp, term.gm), u8::MAX);
        out.add_assign(&c);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CoefficientComparison {
    pub name: CoefficientName,
    pub derived: GradedCoefficient,
    pub reference: GradedCoefficient,
}

impl CoefficientComparison {
    pub fn matches(&self) -> bool {
        self.derived == self.reference
    }

    /// derived - reference.
    pub fn difference(&self) -> GradedCoefficient {
        self.derived.sub(&self.reference)
    }
}

impl Derivation {
    pub fn coefficient(&self, name: CoefficientName) -> &GradedCoefficient {
        &self.coefficients[&name]
    }

    pub fn compare_with_table(
        &self,
        table: impl Fn(CoefficientName) -> Vec<ExpansionTerm>,
    ) -> Vec<CoefficientComparison> {
        CoefficientName::all()
            .into_iter()
            .map(|name| CoefficientComparison {
                name,
                derived: self.coefficient(name).clone(),
                reference: reference_polynomial(&table(name)),
            })
            .collect()
    }

    pub fn compare(&self, set: ExpansionSet) -> Vec<CoefficientComparison> {
        self.compare_with_table(|name| expansion(set, name))
    }

    /// Error naming the first coefficient that differs from the table.
    pub fn check_against(
        &self,
        table: impl Fn(CoefficientName) -> Vec<ExpansionTerm>,
    ) -> Result<(), AlgebraError> {
        for cmp in self.compare_with_table(table) {
            if !cmp.matches() {
                return Err(AlgebraError::DerivationRegression {
                    coefficient: cmp.name.label(),
                    derived: cmp.derived.to_string(),
                    expected: cmp.reference.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Coupler modes projected onto their vacuum: every normal-ordered monomial
/// touching a coupler mode has zero vacuum expectation.
pub fn project_coupler_vacuum(expr: &OperatorExpr) -> OperatorExpr {
    expr.filter(|m, _, _| !m.touches(Mode::Plus) && !m.touches(Mode::Minus))
}
