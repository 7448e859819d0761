use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::dense::{monomial_action, DenseOperator};
use super::{FockError, FockSpace};
use crate::algebra::ModeMonomial;

const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct FitResult {
    pub coefficients: Vec<(ModeMonomial, Complex64)>,
    /// Frobenius norm of the unexplained part on the safe subspace.
    pub residual: f64,
    /// Frobenius norm of the fitted block itself.
    pub norm: f64,
}

impl FitResult {
    pub fn coefficient(&self, m: &ModeMonomial) -> Option<Complex64> {
        self.coefficients
            .iter()
            .find(|(b, _)| b == m)
            .map(|(_, c)| *c)
    }
}

/// Keep only matrix elements whose occupation change equals `net_change`
/// (indexed like the active modes).
pub fn channel(m: &DenseOperator, net_change: &[i32]) -> DenseOperator {
    let space = FockSpace::new(&m.config);
    let mut out = DenseOperator::zeros(&m.config);
    let dim = m.dimension();
    for j in 0..dim {
        let col = space.occupation(j);
        for i in 0..dim {
            let row = space.occupation(i);
            if row
                .iter()
                .zip(col)
                .zip(net_change)
                .all(|((&r, &c), &d)| r as i32 - c as i32 == d)
            {
                out.matrix[(i, j)] = m.matrix[(i, j)];
            }
        }
    }
    out
}

/// Least-squares fit of `m` on the safe subspace against basis monomials.
pub fn coefficient_fit(m: &DenseOperator, basis: &[ModeMonomial]) -> Result<FitResult, FockError> {
    let config = &m.config;
    let space = FockSpace::new(config);
    let safe = space.states_up_to(config.safe_occupation);
    let mut position = vec![None; space.dimension()];
    for (k, &s) in safe.iter().enumerate() {
        position[s] = Some(k);
    }
    let n = safe.len();
    let mut design = DMatrix::<Complex64>::zeros(n * n, basis.len());
    for (col, b) in basis.iter().enumerate() {
        let action = monomial_action(b, config, &space)?;
        for (bj, &j) in safe.iter().enumerate() {
            if let Some((i, amp)) = action[j] {
                if let Some(bi) = position[i] {
                    design[(bi * n + bj, col)] = Complex64::new(amp, 0.0);
                }
            }
        }
    }
    let target = DVector::from_fn(n * n, |r, _| m.matrix[(safe[r / n], safe[r % n])]);

    let svd = design.clone().svd(true, true);
    let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL * largest.max(1e-300))
        .count();
    if basis.is_empty() || largest == 0.0 || rank < basis.len() {
        return Err(FockError::IllPosedFit {
            rank,
            basis: basis.len(),
        });
    }
    let solution = svd
        .solve(&target, RANK_TOL * largest)
        .map_err(|_| FockError::IllPosedFit {
            rank,
            basis: basis.len(),
        })?;
    let remainder = &target - &design * &solution;
    Ok(FitResult {
        coefficients: basis
            .iter()
            .copied()
            .zip(solution.iter().copied())
            .collect(),
        residual: remainder.norm(),
        norm: target.norm(),
    })
}
