use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::scalar::{format_scalar, int, to_complex64, Scalar};
use crate::symbols::{Param, ParamValues, PARAM_COUNT};

/// Monomial in the graded couplings g'_+, g'_- and the parameter symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffMonomial {
    pub gp: u8,
    pub gm: u8,
    pub params: [u8; PARAM_COUNT],
}

impl CoeffMonomial {
    pub const ONE: CoeffMonomial = CoeffMonomial {
        gp: 0,
        gm: 0,
        params: [0; PARAM_COUNT],
    };

    pub fn order(&self) -> u8 {
        self.gp + self.gm
    }

    pub fn exponent(&self, param: Param) -> u8 {
        self.params[param.index()]
    }

    fn mul(&self, other: &CoeffMonomial) -> CoeffMonomial {
        let mut params = self.params;
        for (p, q) in params.iter_mut().zip(other.params.iter()) {
            *p += q;
        }
        CoeffMonomial {
            gp: self.gp + other.gp,
            gm: self.gm + other.gm,
            params,
        }
    }

    fn label(&self) -> String {
        let mut parts = Vec::new();
        for p in Param::ALL {
            match self.exponent(p) {
                0 => {}
                1 => parts.push(p.name()),
                e => parts.push(format!("{}^{}", p.name(), e)),
            }
        }
        for (name, e) in [("gp", self.gp), ("gm", self.gm)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// Polynomial in g'_+ and g'_- whose coefficients are exact complex-rational
/// combinations of parameter monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct GradedCoefficient {
    terms: BTreeMap<CoeffMonomial, Scalar>,
}

impl GradedCoefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: Scalar) -> Self {
        Self::term(CoeffMonomial::ONE, value)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn term(monomial: CoeffMonomial, value: Scalar) -> Self {
        let mut c = Self::zero();
        c.add_term(monomial, value);
        c
    }

    pub fn param(param: Param) -> Self {
        let mut m = CoeffMonomial::ONE;
        m.params[param.index()] = 1;
        Self::term(m, Scalar::one())
    }

    pub fn g_plus() -> Self {
        Self::term(
            CoeffMonomial {
                gp: 1,
                ..CoeffMonomial::ONE
            },
            Scalar::one(),
        )
    }

    pub fn g_minus() -> Self {
        Self::term(
            CoeffMonomial {
                gm: 1,
                ..CoeffMonomial::ONE
            },
            Scalar::one(),
        )
    }

    pub fn add_term(&mut self, monomial: CoeffMonomial, value: Scalar) {
        if value.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial).or_insert_with(Scalar::zero);
        *entry += value;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoeffMonomial, &Scalar)> {
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
        for (m, v) in &other.terms {
            self.add_term(*m, *v);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * factor);
        }
        out
    }

    /// Product with every term above `max_order` in g' discarded.
    pub fn mul(&self, other: &Self, max_order: u8) -> Self {
        let mut out = Self::zero();
        for (m1, v1) in &self.terms {
            for (m2, v2) in &other.terms {
                if m1.order() + m2.order() > max_order {
                    continue;
                }
                out.add_term(m1.mul(m2), v1 * v2);
            }
        }
        out
    }

    pub fn truncated(&self, max_order: u8) -> Self {
        self.filtered(|m| m.order() <= max_order)
    }

    pub fn filtered(&self, keep: impl Fn(&CoeffMonomial) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, v)| (*m, *v))
            .collect();
        GradedCoefficient { terms }
    }

    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|(m, v)| (*m, v.conj())).collect();
        GradedCoefficient { terms }
    }

    /// The g'-free polynomial multiplying g'_+^gp g'_-^gm.
    pub fn g_part(&self, gp: u8, gm: u8) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            if m.gp == gp && m.gm == gm {
                out.add_term(CoeffMonomial { gp: 0, gm: 0, ..*m }, *v);
            }
        }
        out
    }

    /// Replace every occurrence of `param` by `replacement`.
    pub fn substitute(&self, param: Param, replacement: &Self, max_order: u8) -> Self {
        let idx = param.index();
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            let mut base = *m;
            let power = base.params[idx];
            base.params[idx] = 0;
            let mut acc = Self::term(base, *v);
            for _ in 0..power {
                acc = acc.mul(replacement, max_order);
            }
            out.add_assign(&acc);
        }
        out.truncated(max_order)
    }

    pub fn evaluate(&self, values: &ParamValues) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, v)| {
                let mut x =
                    values.g_prime_plus.powi(m.gp as i32) * values.g_prime_minus.powi(m.gm as i32);
                for p in Param::ALL {
                    let e = m.exponent(p);
                    if e > 0 {
                        x *= values.value(p).powi(e as i32);
                    }
                }
                to_complex64(v) * x
            })
            .sum()
    }

    pub fn from_int(value: i64) -> Self {
        Self::constant(int(value))
    }

    pub fn params_used(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|&p| self.uses_param(p))
            .collect()
    }

    /// Whether any term contains `param`.
    pub fn uses_param(&self, param: Param) -> bool {
        self.terms.keys().any(|m| m.exponent(param) > 0)
    }
}

impl fmt::Display for GradedCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, v)| {
                let label = m.label();
                if label.is_empty() {
                    format_scalar(v)
                } else {
                    format!("{}*{}", format_scalar(v), label)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
