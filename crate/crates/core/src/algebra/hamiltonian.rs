//! The lab-frame Hamiltonian, the generator S and the frame generator.

use num_traits::One;

use super::coefficient::GradedCoefficient;
use super::expr::{AlgebraConfig, OperatorExpr};
use super::monomial::Mode;
use super::phase::PhaseTag;
use super::scalar::{int, real, Scalar};
use super::AlgebraError;
use crate::symbols::{Param, MODE_SIGNS};

fn param(p: Param) -> GradedCoefficient {
    GradedCoefficient::param(p)
}

fn scaled_param(p: Param, num: i64, den: i64) -> GradedCoefficient {
    param(p).scale(&real(num, den))
}

/// Charge-type quadrature a† - a.
fn momentum(mode: Mode) -> OperatorExpr {
    OperatorExpr::create(mode).sub(&OperatorExpr::annihilate(mode))
}

/// H/hbar with the drive written as p (a + a†)^2 cos(w_pk t + theta_k).
pub fn full_hamiltonian(config: &AlgebraConfig) -> Result<OperatorExpr, AlgebraError> {
    let mut h = OperatorExpr::zero();
    let order = config.max_order;
    for k in 0..4 {
        let mode = Mode::Jpo(k);
        let x = OperatorExpr::position(mode);
        h.add_assign(&OperatorExpr::number(mode).scale_by(&param(Param::Omega), order));
        h.add_assign(
            &x.power(4, config)?
                .scale_by(&scaled_param(Param::Kerr, -1, 12), order),
        );
        let x2 = x
            .power(2, config)?
            .scale_by(&scaled_param(Param::Pump, 1, 2), order);
        h.add_assign(&x2.with_tag(&PhaseTag::pump(k, 1)));
        h.add_assign(&x2.with_tag(&PhaseTag::pump(k, -1)));
    }

    let plus = Mode::Plus;
    let minus = Mode::Minus;
    h.add_assign(&OperatorExpr::number(plus).scale_by(&param(Param::OmegaPlus), order));
    let squeeze = OperatorExpr::annihilate(plus)
        .power(2, config)?
        .add(&OperatorExpr::create(plus).power(2, config)?);
    h.add_assign(&squeeze.scale_by(&scaled_param(Param::OmegaPlus, -1, 2), order));
    h.add_assign(&OperatorExpr::number(minus).scale_by(&param(Param::OmegaMinus), order));
    let xm4 = OperatorExpr::position(minus).power(4, config)?;
    h.add_assign(&xm4.scale_by(&scaled_param(Param::KerrMinus, -1, 12), order));

    let p_plus = OperatorExpr::annihilate(plus).sub(&OperatorExpr::create(plus));
    let p_minus = OperatorExpr::annihilate(minus).sub(&OperatorExpr::create(minus));
    for k in 0..4 {
        let pk = momentum(Mode::Jpo(k));
        h.add_assign(
            &pk.multiply(&p_plus, config)?
                .scale_by(&param(Param::GPlus), order),
        );
        let minus_coupling = param(Param::GMinus).scale(&int(MODE_SIGNS[k]));
        h.add_assign(
            &pk.multiply(&p_minus, config)?
                .scale_by(&minus_coupling, order),
        );
    }
    Ok(h)
}

/// S = -g'_+ sum_k (a_k† a_+ - a_k a_+†) - g'_- sum_k s_k (a_k† a_- - a_k a_-†).
pub fn generator(config: &AlgebraConfig) -> Result<OperatorExpr, AlgebraError> {
    let mut s = OperatorExpr::zero();
    for k in 0..4 {
        let jpo = Mode::Jpo(k);
        for (coupler, g) in [
            (Mode::Plus, GradedCoefficient::g_plus()),
            (
                Mode::Minus,
                GradedCoefficient::g_minus().scale(&int(MODE_SIGNS[k])),
            ),
        ] {
            let hop = OperatorExpr::create(jpo)
                .multiply(&OperatorExpr::annihilate(coupler), config)?
                .sub(
                    &OperatorExpr::annihilate(jpo)
                        .multiply(&OperatorExpr::create(coupler), config)?,
                );
            s.add_assign(&hop.scale_by(&g.scale(&-Scalar::one()), config.max_order));
        }
    }
    Ok(s)
}

/// -i U_r† dU_r/dt for the rotating frame.
pub fn frame_generator() -> OperatorExpr {
    let mut f = OperatorExpr::zero();
    for k in 0..4 {
        f.add_assign(
            &OperatorExpr::number(Mode::Jpo(k))
                .scale_by(&scaled_param(Param::PumpFreq(k), -1, 2), 0),
        );
    }
    f.add_assign(
        &OperatorExpr::number(Mode::Plus).scale_by(&scaled_param(Param::OmegaPlus, -1, 1), 0),
    );
    f.add_assign(
        &OperatorExpr::number(Mode::Minus).scale_by(&scaled_param(Param::OmegaMinus, -1, 1), 0),
    );
    f
}

/// w - w_+ - K.
pub fn plus_denominator() -> GradedCoefficient {
    param(Param::Omega)
        .sub(&param(Param::OmegaPlus))
        .sub(&param(Param::Kerr))
}

/// w - w_- - K + K_-.
pub fn minus_denominator() -> GradedCoefficient {
    param(Param::Omega)
        .sub(&param(Param::OmegaMinus))
        .sub(&param(Param::Kerr))
        .add(&param(Param::KerrMinus))
}

/// Replace g_± by g'_± times its denominator (the cancellation condition).
pub fn substitute_couplings(expr: &OperatorExpr, max_order: u8) -> OperatorExpr {
    let plus = GradedCoefficient::g_plus().mul(&plus_denominator(), max_order);
    let minus = GradedCoefficient::g_minus().mul(&minus_denominator(), max_order);
    expr.map_coefficients(|c| {
        c.substitute(Param::GPlus, &plus, max_order)
            .substitute(Param::GMinus, &minus, max_order)
    })
}
