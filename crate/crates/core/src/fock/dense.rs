use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{FockConfig, FockError, FockSpace};
use crate::algebra::scalar::to_f64;
use crate::algebra::{ModeMonomial, OperatorExpr, PhaseTag};
use crate::symbols::ParamValues;

/// Dense complex matrix on the truncated product space.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    pub matrix: DMatrix<Complex64>,
    pub config: FockConfig,
}

impl DenseOperator {
    pub fn zeros(config: &FockConfig) -> Self {
        let dim = config.dimension();
        DenseOperator {
            matrix: DMatrix::zeros(dim, dim),
            config: config.clone(),
        }
    }

    pub fn identity(config: &FockConfig) -> Self {
        let dim = config.dimension();
        DenseOperator {
            matrix: DMatrix::identity(dim, dim),
            config: config.clone(),
        }
    }

    pub fn from_matrix(matrix: DMatrix<Complex64>, config: &FockConfig) -> Result<Self, FockError> {
        let dim = config.dimension();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(FockError::InvalidConfig(format!(
                "matrix is {}x{}, configuration needs {dim}x{dim}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(DenseOperator {
            matrix,
            config: config.clone(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    fn with(&self, matrix: DMatrix<Complex64>) -> Self {
        DenseOperator {
            matrix,
            config: self.config.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.with(&self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with(&self.matrix - &other.matrix)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.with(&self.matrix * factor)
    }

    pub fn adjoint(&self) -> Self {
        self.with(self.matrix.adjoint())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.with(&self.matrix * &other.matrix - &other.matrix * &self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }

    pub fn hermitian_deviation(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn anti_hermitian_deviation(&self) -> f64 {
        max_abs(&(&self.matrix + self.matrix.adjoint()))
    }

    pub fn restrict(&self, states: &[usize]) -> DMatrix<Complex64> {
        DMatrix::from_fn(states.len(), states.len(), |i, j| {
            self.matrix[(states[i], states[j])]
        })
    }

    pub fn safe_states(&self) -> Vec<usize> {
        FockSpace::new(&self.config).states_up_to(self.config.safe_occupation)
    }

    pub fn safe_block(&self) -> DMatrix<Complex64> {
        self.restrict(&self.safe_states())
    }
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Column-wise action of a normal-ordered monomial: for each basis state the
/// image state and amplitude, if the image stays inside the truncation.
pub(crate) fn monomial_action(
    m: &ModeMonomial,
    config: &FockConfig,
    space: &FockSpace,
) -> Result<Vec<Option<(usize, f64)>>, FockError> {
    let mut slots = Vec::new();
    for (i, &(c, d)) in m.powers.iter().enumerate() {
        if c == 0 && d == 0 {
            continue;
        }
        let mode = crate::algebra::Mode::from_index(i);
        let slot = config.slot(mode).ok_or(FockError::InactiveMode(mode))?;
        slots.push((slot, c as usize, d as usize));
    }
    let mut out = Vec::with_capacity(space.dimension());
    for j in 0..space.dimension() {
        let mut occ = space.occupation(j).to_vec();
        // Squared amplitude is an integer product; one square root at the end.
        let mut squared: u128 = 1;
        let mut alive = true;
        for &(slot, c, d) in &slots {
            let n = occ[slot];
            if n < d || n - d + c >= config.levels {
                alive = false;
                break;
            }
            for q in (n - d + 1)..=n {
                squared *= q as u128;
            }
            for q in (n - d + 1)..=(n - d + c) {
                squared *= q as u128;
            }
            occ[slot] = n - d + c;
        }
        out.push(if alive {
            space.index(&occ).map(|i| (i, (squared as f64).sqrt()))
        } else {
            None
        });
    }
    Ok(out)
}

/// Matrix of an expression whose tags are all zero.
pub fn represent(
    expr: &OperatorExpr,
    values: &ParamValues,
    config: &FockConfig,
) -> Result<DenseOperator, FockError> {
    if expr.terms().any(|((_, t), _)| !t.is_zero()) {
        return Err(FockError::NonZeroTag);
    }
    represent_frozen(expr, values, &[0.0; 4], config)
}

/// Matrix with every tag evaluated at t = 0 and the given pump phases.
pub fn represent_frozen(
    expr: &OperatorExpr,
    values: &ParamValues,
    pump_phases: &[f64; 4],
    config: &FockConfig,
) -> Result<DenseOperator, FockError> {
    config.validate()?;
    let space = FockSpace::new(config);
    let mut out = DenseOperator::zeros(config);
    for ((m, t), c) in expr.terms() {
        if let Some(missing) = c
            .params_used()
            .into_iter()
            .find(|&p| values.value(p).is_nan())
        {
            return Err(FockError::MissingParameter(missing));
        }
        let coefficient = c.evaluate(values) * frozen_phase(t, pump_phases);
        if coefficient == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, image) in monomial_action(m, config, &space)?.into_iter().enumerate() {
            if let Some((i, amp)) = image {
                out.matrix[(i, j)] += coefficient * amp;
            }
        }
    }
    Ok(out)
}

fn frozen_phase(tag: &PhaseTag, pump_phases: &[f64; 4]) -> Complex64 {
    let angle: f64 = tag
        .phase
        .iter()
        .zip(pump_phases)
        .map(|(r, th)| to_f64(r) * th)
        .sum();
    Complex64::from_polar(1.0, angle)
}
