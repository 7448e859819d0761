use nalgebra::DMatrix;
use num_complex::Complex64;

use super::dense::{max_abs, DenseOperator};
use super::expm::expm;
use super::{FockError, FockSpace};

const ANTI_HERMITIAN_TOL: f64 = 1e-10;
const UNITARITY_TOL: f64 = 1e-10;

/// e^S stored block by block when S conserves total occupation, otherwise
/// as one dense block covering the whole space.
#[derive(Clone, Debug)]
pub struct SectorUnitary {
    /// (states, block) pairs; states are global indices.
    pub blocks: Vec<(Vec<usize>, DMatrix<Complex64>)>,
    pub unitarity_residual: f64,
}

fn conserves_total(s: &DenseOperator, space: &FockSpace) -> bool {
    let dim = s.dimension();
    for j in 0..dim {
        for i in 0..dim {
            if s.matrix[(i, j)].norm() > 0.0 && space.total(i) != space.total(j) {
                return false;
            }
        }
    }
    true
}

/// Exponentiate an anti-Hermitian generator, checking unitarity.
pub fn exponentiate_generator(
    s: &DenseOperator,
    max_total: Option<usize>,
) -> Result<SectorUnitary, FockError> {
    let deviation = s.anti_hermitian_deviation();
    if deviation > ANTI_HERMITIAN_TOL {
        return Err(FockError::NotAntiHermitian { deviation });
    }
    let space = FockSpace::new(&s.config);
    let groups: Vec<Vec<usize>> = if conserves_total(s, &space) {
        space
            .sectors()
            .iter()
            .enumerate()
            .filter(|(n, states)| !states.is_empty() && max_total.is_none_or(|m| *n <= m))
            .map(|(_, states)| {
                let mut st = states.clone();
                st.sort_unstable();
                st
            })
            .collect()
    } else {
        vec![(0..s.dimension()).collect()]
    };
    let mut blocks = Vec::with_capacity(groups.len());
    let mut residual: f64 = 0.0;
    for states in groups {
        let block = expm(&s.restrict(&states));
        let gram = block.adjoint() * &block;
        let n = states.len();
        residual = residual.max(max_abs(&(gram - DMatrix::<Complex64>::identity(n, n))));
        blocks.push((states, block));
    }
    if residual > UNITARITY_TOL {
        return Err(FockError::NonUnitary { residual });
    }
    Ok(SectorUnitary {
        blocks,
        unitarity_residual: residual,
    })
}

/// e^{-S} A e^{S} on the full truncated space.
pub fn conjugate_exact(s: &DenseOperator, a: &DenseOperator) -> Result<DenseOperator, FockError> {
    let unitary = exponentiate_generator(s, None)?;
    Ok(apply(&unitary, a))
}

/// e^{-S} A e^{S} restricted to sectors of total occupation <= `max_total`.
/// Exact when S conserves total occupation; entries outside those sectors
/// are left zero.
pub fn conjugate_sectors(
    s: &DenseOperator,
    a: &DenseOperator,
    max_total: usize,
) -> Result<DenseOperator, FockError> {
    let unitary = exponentiate_generator(s, Some(max_total))?;
    Ok(apply(&unitary, a))
}

fn apply(unitary: &SectorUnitary, a: &DenseOperator) -> DenseOperator {
    let mut out = DenseOperator::zeros(&a.config);
    for (rows, u_row) in &unitary.blocks {
        let left = u_row.adjoint();
        let strip = a.matrix.select_rows(rows.iter());
        for (cols, u_col) in &unitary.blocks {
            let block = strip.select_columns(cols.iter());
            if block.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let product = &left * block * u_col;
            for (bi, &i) in rows.iter().enumerate() {
                for (bj, &j) in cols.iter().enumerate() {
                    out.matrix[(i, j)] = product[(bi, bj)];
                }
            }
        }
    }
    out
}
