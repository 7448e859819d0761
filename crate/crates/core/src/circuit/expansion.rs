//! Coefficient polynomials of the effective Hamiltonian in the small
//! couplings g'_+ and g'_-.
//!
//! Two tables are kept. `Published` reproduces the closed forms as they are
//! commonly quoted for this coupler. `Rederived` is the output of the exact
//! operator-algebra pipeline in this crate, independently confirmed by the
//! Fock-space oracle; it differs from `Published` in the quadratic
//! self-energy of the anharmonic terms and in several fourth-order terms.

use crate::symbols::{CoefficientName, Param, ParamValues};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExpansionSet {
    #[default]
    Published,
    Rederived,
}

/// `num/den * param * g'_+^gp * g'_-^gm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub param: Param,
    pub gp: u8,
    pub gm: u8,
    pub num: i64,
    pub den: i64,
}

const fn t(param: Param, gp: u8, gm: u8, num: i64, den: i64) -> ExpansionTerm {
    ExpansionTerm {
        param,
        gp,
        gm,
        num,
        den,
    }
}

use Param::{Kerr as K, KerrMinus as KM, Omega as W, OmegaMinus as WM, OmegaPlus as WP, Pump as P};

pub fn expansion(set: ExpansionSet, name: CoefficientName) -> Vec<ExpansionTerm> {
    use CoefficientName::*;
    use ExpansionSet::*;
    match (set, name) {
        (_, Delta(k)) => {
            let mut v = vec![
                t(W, 0, 0, 1, 1),
                t(W, 2, 0, 1, 1),
                t(W, 0, 2, 1, 1),
                t(W, 4, 0, -4, 1),
                t(W, 0, 4, -4, 1),
                t(WP, 2, 0, -1, 1),
                t(WP, 4, 0, 4, 1),
                t(WM, 0, 2, -1, 1),
                t(WM, 0, 4, 4, 1),
                t(Param::PumpFreq(k), 0, 0, -1, 2),
            ];
            match set {
                Published => v.extend([
                    t(K, 0, 0, 1, 1),
                    t(K, 2, 0, -5, 1),
                    t(K, 0, 2, -5, 1),
                    t(K, 4, 0, 6, 1),
                    t(K, 0, 4, 6, 1),
                    t(K, 2, 2, 1, 1),
                    t(KM, 0, 2, 1, 1),
                    t(KM, 0, 4, -2, 1),
                ]),
                Rederived => v.extend([
                    t(K, 0, 0, -1, 1),
                    t(K, 2, 0, -1, 1),
                    t(K, 0, 2, -1, 1),
                    t(K, 4, 0, 4, 1),
                    t(K, 0, 4, 4, 1),
                    t(KM, 0, 2, 1, 1),
                    t(KM, 0, 4, -4, 1),
                ]),
            }
            v
        }
        (_, KPrime) => {
            let mut v = vec![
                t(K, 0, 0, 1, 1),
                t(K, 2, 0, -2, 1),
                t(K, 0, 2, -2, 1),
                t(K, 4, 0, 13, 6),
                t(K, 0, 4, 13, 6),
                t(K, 2, 2, 3, 1),
            ];
            v.push(match set {
                Published => t(KM, 0, 4, 1, 2),
                Rederived => t(KM, 0, 4, 1, 1),
            });
            v
        }
        (Published, PumpAmplitude) => vec![t(P, 0, 0, 1, 1)],
        (Rederived, PumpAmplitude) => vec![
            t(P, 0, 0, 1, 1),
            t(P, 2, 0, -1, 1),
            t(P, 0, 2, -1, 1),
            t(P, 4, 0, 7, 12),
            t(P, 0, 4, 7, 12),
            t(P, 2, 2, 1, 2),
        ],
        (_, DeltaPlus) => {
            let mut v = vec![
                t(W, 2, 0, -4, 1),
                t(W, 4, 0, 16, 1),
                t(WP, 2, 0, 4, 1),
                t(WP, 4, 0, -16, 1),
                t(K, 2, 0, 4, 1),
            ];
            match set {
                Published => v.extend([t(K, 4, 0, -52, 3), t(K, 2, 2, -4, 1)]),
                Rederived => v.push(t(K, 4, 0, -16, 1)),
            }
            v
        }
        (_, DeltaMinus) => {
            let mut v = vec![
                t(W, 0, 2, -4, 1),
                t(W, 0, 4, 16, 1),
                t(WM, 0, 2, 4, 1),
                t(WM, 0, 4, -16, 1),
                t(K, 0, 2, 4, 1),
            ];
            match set {
                Published => v.extend([
                    t(K, 0, 4, -52, 3),
                    t(K, 2, 2, -4, 1),
                    t(KM, 0, 0, 1, 1),
                    t(KM, 0, 2, -20, 1),
                    t(KM, 0, 4, 208, 3),
                ]),
                Rederived => v.extend([
                    t(K, 0, 4, -16, 1),
                    t(KM, 0, 0, -1, 1),
                    t(KM, 0, 2, -4, 1),
                    t(KM, 0, 4, 16, 1),
                ]),
            }
            v
        }
        (_, KPrimePlus) => vec![t(K, 4, 0, 4, 1)],
        (_, KPrimeMinus) => vec![
            t(K, 0, 4, 4, 1),
            t(KM, 0, 0, 1, 1),
            t(KM, 0, 2, -8, 1),
            t(KM, 0, 4, 80, 3),
        ],
        (_, Gamma4) => vec![t(KM, 0, 4, 2, 1)],
        (_, Chi(k, l)) => {
            let same = crate::symbols::MODE_SIGNS[k] * crate::symbols::MODE_SIGNS[l];
            let (quartic, mixed) = match set {
                Published => (2, 4 * same),
                Rederived => (1, 2 * same),
            };
            vec![
                t(K, 4, 0, quartic, 1),
                t(K, 0, 4, quartic, 1),
                t(K, 2, 2, mixed, 1),
                t(KM, 0, 4, 2, 1),
            ]
        }
        (Published, Gamma2JPlus) => vec![t(K, 2, 0, 2, 1)],
        (Rederived, Gamma2JPlus) => {
            vec![t(K, 2, 0, 2, 1), t(K, 4, 0, -14, 3), t(K, 2, 2, -2, 1)]
        }
        (Published, Gamma2JMinus) => {
            vec![t(K, 0, 2, 2, 1), t(KM, 0, 2, 2, 1), t(KM, 0, 4, -8, 3)]
        }
        (Rederived, Gamma2JMinus) => vec![
            t(K, 0, 2, 2, 1),
            t(K, 0, 4, -14, 3),
            t(K, 2, 2, -2, 1),
            t(KM, 0, 2, 2, 1),
            t(KM, 0, 4, -32, 3),
        ],
        (_, Gamma2PlusMinus) => vec![t(K, 2, 2, 2, 1)],
    }
}

/// Numeric value of an expansion. Terms whose g' factor vanishes are skipped
/// so that an infinite omega_+ in the decoupled limit contributes nothing.
pub fn evaluate(terms: &[ExpansionTerm], values: &ParamValues) -> f64 {
    terms
        .iter()
        .map(|term| {
            let g = values.g_prime_plus.powi(term.gp as i32)
                * values.g_prime_minus.powi(term.gm as i32);
            if g == 0.0 {
                0.0
            } else {
                term.num as f64 / term.den as f64 * values.value(term.param) * g
            }
        })
        .sum()
}
