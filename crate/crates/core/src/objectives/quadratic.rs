use crate::error::{Error, Result};
use crate::numeric::dot;
use crate::objectives::{check_point, Objective};

/// `F(x) = ½ xᵀHx + hᵀx + c` with symmetric, entrywise non-positive `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticObjective {
    hessian: Vec<Vec<f64>>,
    linear: Vec<f64>,
    offset: f64,
}

impl QuadraticObjective {
    pub fn new(hessian: Vec<Vec<f64>>, linear: Vec<f64>, offset: f64) -> Result<Self> {
        let n = linear.len();
        if n == 0 || hessian.len() != n || hessian.iter().any(|r| r.len() != n) {
            return Err(Error::usage("quadratic objective needs an n x n matrix and an n-vector"));
        }
        for i in 0..n {
            for j in 0..n {
                let v = hessian[i][j];
                if !v.is_finite() || v > 0.0 {
                    return Err(Error::usage(format!(
                        "H[{i}][{j}] = {v}: entries must be finite and non-positive"
                    )));
                }
                if (v - hessian[j][i]).abs() > 1e-12 * (1.0 + v.abs()) {
                    return Err(Error::usage("H must be symmetric"));
                }
            }
        }
        Ok(Self {
            hessian,
            linear,
            offset,
        })
    }

    pub fn hessian(&self) -> &[Vec<f64>] {
        &self.hessian
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `½ xᵀHx + hᵀx` without the offset; no domain check.
    pub fn raw_value(&self, x: &[f64]) -> f64 {
        let hx: f64 = self
            .hessian
            .iter()
            .zip(x)
            .map(|(row, xi)| xi * dot(row, x))
            .sum();
        0.5 * hx + dot(&self.linear, x)
    }
}

impl Objective for QuadraticObjective {
    fn dim(&self) -> usize {
        self.linear.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_point(self.dim(), x)?;
        Ok(self.raw_value(x) + self.offset)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point(self.dim(), x)?;
        Ok(self
            .hessian
            .iter()
            .zip(&self.linear)
            .map(|(row, h)| dot(row, x) + h)
            .collect())
    }

    /// Frobenius norm of `H`, an upper bound on its spectral norm.
    fn smoothness(&self) -> Option<f64> {
        Some(self.hessian.iter().flatten().map(|v| v * v).sum::<f64>().sqrt())
    }
}
