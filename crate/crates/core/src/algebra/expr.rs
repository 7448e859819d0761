use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::One;

use super::coefficient::GradedCoefficient;
use super::monomial::{Mode, ModeMonomial};
use super::phase::PhaseTag;
use super::scalar::{int, Scalar};
use super::AlgebraError;

/// What to do with monomials above the degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverflowPolicy {
    Error,
    Drop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraConfig {
    pub max_order: u8,
    pub max_degree: u32,
    pub overflow: OverflowPolicy,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig {
            max_order: 4,
            max_degree: 8,
            overflow: OverflowPolicy::Error,
        }
    }
}

pub type TermKey = (ModeMonomial, PhaseTag);

/// Sum of normal-ordered monomials with phase tags and graded coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<TermKey, GradedCoefficient>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(ModeMonomial::IDENTITY, GradedCoefficient::one())
    }

    pub fn monomial(m: ModeMonomial, coeff: GradedCoefficient) -> Self {
        Self::tagged(m, PhaseTag::ZERO, coeff)
    }

    pub fn tagged(m: ModeMonomial, tag: PhaseTag, coeff: GradedCoefficient) -> Self {
        let mut e = Self::zero();
        e.add_term(m, tag, &coeff);
        e
    }

    pub fn annihilate(mode: Mode) -> Self {
        Self::monomial(ModeMonomial::annihilation(mode), GradedCoefficient::one())
    }

    pub fn create(mode: Mode) -> Self {
        Self::monomial(ModeMonomial::creation(mode), GradedCoefficient::one())
    }

    pub fn number(mode: Mode) -> Self {
        Self::monomial(ModeMonomial::number(mode), GradedCoefficient::one())
    }

    /// a + a† for one mode.
    pub fn position(mode: Mode) -> Self {
        Self::annihilate(mode).add(&Self::create(mode))
    }

    pub fn add_term(&mut self, m: ModeMonomial, tag: PhaseTag, coeff: &GradedCoefficient) {
        if coeff.is_zero() {
            return;
        }
        let key = (m, tag);
        let entry = self.terms.entry(key).or_default();
        entry.add_assign(coeff);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &GradedCoefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for ((m, t), c) in &other.terms {
            self.add_term(*m, *t, c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        self.map_coefficients(|c| c.scale(factor))
    }

    /// Multiply every coefficient by a graded coefficient.
    pub fn scale_by(&self, factor: &GradedCoefficient, max_order: u8) -> Self {
        self.map_coefficients(|c| c.mul(factor, max_order))
    }

    pub fn map_coefficients(&self, f: impl Fn(&GradedCoefficient) -> GradedCoefficient) -> Self {
        let mut out = Self::zero();
        for ((m, t), c) in &self.terms {
            out.add_term(*m, *t, &f(c));
        }
        out
    }

    pub fn filter(
        &self,
        keep: impl Fn(&ModeMonomial, &PhaseTag, &GradedCoefficient) -> bool,
    ) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|((m, t), c)| keep(m, t, c))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        OperatorExpr { terms }
    }

    pub fn with_tag(&self, tag: &PhaseTag) -> Self {
        let mut out = Self::zero();
        for ((m, t), c) in &self.terms {
            out.add_term(*m, t.add(tag), c);
        }
        out
    }

    pub fn truncated(&self, max_order: u8) -> Self {
        self.map_coefficients(|c| c.truncated(max_order))
    }

    /// Hermitian conjugate: monomials are adjointed, tags negated and
    /// coefficients complex-conjugated.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for ((m, t), c) in &self.terms {
            out.add_term(m.adjoint(), t.neg(), &c.conj());
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn multiply(&self, other: &Self, config: &AlgebraConfig) -> Result<Self, AlgebraError> {
        let mut out = Self::zero();
        for ((m1, t1), c1) in &self.terms {
            for ((m2, t2), c2) in &other.terms {
                let c = c1.mul(c2, config.max_order);
                if c.is_zero() {
                    continue;
                }
                let tag = t1.add(t2);
                for (weight, m) in m1.product(m2) {
                    if m.degree() > config.max_degree {
                        match config.overflow {
                            OverflowPolicy::Error => {
                                return Err(AlgebraError::DegreeOverflow {
                                    degree: m.degree(),
                                    max: config.max_degree,
                                })
                            }
                            OverflowPolicy::Drop => continue,
                        }
                    }
                    out.add_term(m, tag, &c.scale(&int(weight as i64)));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self, config: &AlgebraConfig) -> Result<Self, AlgebraError> {
        Ok(self
            .multiply(other, config)?
            .sub(&other.multiply(self, config)?))
    }

    pub fn power(&self, exponent: u32, config: &AlgebraConfig) -> Result<Self, AlgebraError> {
        let mut acc = Self::identity();
        for _ in 0..exponent {
            acc = acc.multiply(self, config)?;
        }
        Ok(acc)
    }

    pub fn coefficient(&self, m: &ModeMonomial, tag: &PhaseTag) -> GradedCoefficient {
        self.terms.get(&(*m, *tag)).cloned().unwrap_or_default()
    }

    /// Canonical text: one `monomial | tag | coefficient` line per term in
    /// sorted key order.
    pub fn to_canonical_text(&self) -> String {
        let mut s = String::new();
        for ((m, t), c) in &self.terms {
            let _ = writeln!(s, "{m} | {t} | {c}");
        }
        s
    }
}

pub fn extract_coefficient(
    expr: &OperatorExpr,
    m: &ModeMonomial,
    tag: &PhaseTag,
) -> GradedCoefficient {
    expr.coefficient(m, tag)
}

pub fn multiply(
    a: &OperatorExpr,
    b: &OperatorExpr,
    config: &AlgebraConfig,
) -> Result<OperatorExpr, AlgebraError> {
    a.multiply(b, config)
}

pub fn commutator(
    a: &OperatorExpr,
    b: &OperatorExpr,
    config: &AlgebraConfig,
) -> Result<OperatorExpr, AlgebraError> {
    a.commutator(b, config)
}
