use nalgebra::Matrix6;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{CircuitError, CircuitParams};

/// Node order: four JPO fluxes, then the two coupler nodes.
pub fn capacitance_matrix(params: &CircuitParams) -> Result<Matrix6<f64>, CircuitError> {
    params.validate()?;
    let (cj, c, cg) = (params.c_j, params.c, params.c_g);
    let mut m = Matrix6::zeros();
    for k in 0..4 {
        m[(k, k)] = cj + c;
        let node = if k < 2 { 4 } else { 5 };
        m[(k, node)] = -c;
        m[(node, k)] = -c;
    }
    m[(4, 4)] = cg + 2.0 * c;
    m[(5, 5)] = cg + 2.0 * c;
    m[(4, 5)] = -cg;
    m[(5, 4)] = -cg;
    Ok(m)
}

/// Gauss-Jordan inversion in exact rational arithmetic. The matrix is
/// assembled from the raw capacitances without intermediate rounding; the
/// result is rounded once at the end.
pub fn inverse_capacitance_numeric(params: &CircuitParams) -> Result<Matrix6<f64>, CircuitError> {
    params.validate()?;
    let exact = |x: f64| BigRational::from_float(x).ok_or(CircuitError::SingularMatrix);
    let (cj, c, cg) = (exact(params.c_j)?, exact(params.c)?, exact(params.c_g)?);
    let zero = BigRational::zero();
    let mut a = vec![vec![zero.clone(); 12]; 6];
    for k in 0..4 {
        let node = if k < 2 { 4 } else { 5 };
        a[k][k] = &cj + &c;
        a[k][node] = -c.clone();
        a[node][k] = -c.clone();
    }
    let two = BigRational::from_integer(2.into());
    a[4][4] = &cg + &two * &c;
    a[5][5] = a[4][4].clone();
    a[4][5] = -cg.clone();
    a[5][4] = -cg;
    for (i, row) in a.iter_mut().enumerate() {
        row[6 + i] = BigRational::one();
    }
    for col in 0..6 {
        let pivot = (col..6)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(CircuitError::SingularMatrix)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
    }
    Ok(Matrix6::from_fn(|i, j| {
        a[i][6 + j].to_f64().unwrap_or(f64::NAN)
    }))
}

/// The independent elements of the inverse capacitance matrix (1/F).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseCapacitance {
    pub c11: f64,
    pub c12: f64,
    pub c13: f64,
    pub c15: f64,
    pub c16: f64,
    pub c55: f64,
    pub c56: f64,
}

impl InverseCapacitance {
    pub fn to_matrix(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        let mut set = |i: usize, j: usize, v: f64| {
            m[(i, j)] = v;
            m[(j, i)] = v;
        };
        for k in 0..4 {
            set(k, k, self.c11);
        }
        set(0, 1, self.c12);
        set(2, 3, self.c12);
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            set(i, j, self.c13);
        }
        for (i, j) in [(0, 4), (1, 4), (2, 5), (3, 5)] {
            set(i, j, self.c15);
        }
        for (i, j) in [(0, 5), (1, 5), (2, 4), (3, 4)] {
            set(i, j, self.c16);
        }
        set(4, 4, self.c55);
        set(5, 5, self.c55);
        set(4, 5, self.c56);
        m
    }

    pub fn named(&self) -> [(&'static str, f64); 7] {
        [
            ("c11", self.c11),
            ("c12", self.c12),
            ("c13", self.c13),
            ("c15", self.c15),
            ("c16", self.c16),
            ("c55", self.c55),
            ("c56", self.c56),
        ]
    }
}

pub fn inverse_capacitance_analytic(
    params: &CircuitParams,
) -> Result<InverseCapacitance, CircuitError> {
    params.validate()?;
    if params.c == 0.0 {
        return Err(CircuitError::SingularMatrix);
    }
    let (cj, c, cg) = (params.c_j, params.c, params.c_g);
    let sigma = cj * c + c * cg + cg * cj;
    let shared = 1.0 / (4.0 * cj) + c / (4.0 * sigma);
    Ok(InverseCapacitance {
        c11: (1.0 + c / (4.0 * cj) + c * c / (4.0 * sigma)) / (cj + c),
        c12: c / (cj + c) * shared,
        c13: c * cg / (4.0 * cj * sigma),
        c15: shared,
        c16: 1.0 / (4.0 * cj) - c / (4.0 * sigma),
        c55: 1.0 / (4.0 * c) + 1.0 / (4.0 * cj) + (cj + c) / (4.0 * sigma),
        c56: 1.0 / (4.0 * c) + 1.0 / (4.0 * cj) - (cj + c) / (4.0 * sigma),
    })
}
