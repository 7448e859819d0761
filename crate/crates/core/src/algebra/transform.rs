use super::expr::{AlgebraConfig, OperatorExpr};
use super::monomial::{Mode, ModeMonomial};
use super::phase::PhaseTag;
use super::scalar::{rational, real};
use super::AlgebraError;

/// e^{-S} A e^{S} = sum_{m <= order} ad_S^m(A) / m!, with ad_S(X) = [X, S].
pub fn bch_conjugate(
    generator: &OperatorExpr,
    operand: &OperatorExpr,
    order: u8,
    config: &AlgebraConfig,
) -> Result<OperatorExpr, AlgebraError> {
    if order > config.max_order {
        return Err(AlgebraError::OrderTooHigh {
            order,
            max: config.max_order,
        });
    }
    let mut result = operand.truncated(config.max_order);
    let mut nested = result.clone();
    let mut factorial = 1i64;
    for m in 1..=order as i64 {
        nested = nested.commutator(generator, config)?;
        if nested.is_empty() {
            break;
        }
        factorial *= m;
        result.add_assign(&nested.scale(&real(1, factorial)));
    }
    Ok(result)
}

/// Phase acquired by a monomial in the frame rotating at w_pk/2 (JPOs) and
/// w_± (coupler modes).
pub fn rotation_tag(m: &ModeMonomial) -> PhaseTag {
    let net = m.net_change();
    let mut tag = PhaseTag::ZERO;
    for k in 0..4 {
        let half = rational(net[k] as i64, 2);
        tag.freq[k] = half;
        tag.phase[k] = half;
    }
    tag.freq[4] = rational(net[Mode::Plus.index()] as i64, 1);
    tag.freq[5] = rational(net[Mode::Minus.index()] as i64, 1);
    tag
}

pub fn rotate_frame(expr: &OperatorExpr) -> OperatorExpr {
    let mut out = OperatorExpr::zero();
    for ((m, t), c) in expr.terms() {
        out.add_term(*m, t.add(&rotation_tag(m)), c);
    }
    out
}

pub fn rwa_filter(expr: &OperatorExpr) -> OperatorExpr {
    expr.filter(|_, t, _| t.is_stationary())
}
