use crate::error::{Error, Result};
use crate::objectives::{check_point, Objective};

/// Directed cut of `k` disjoint arcs `a_i -> b_i` evaluated on a set given as
/// a 0/1 indicator over `(a_1..a_k, b_1..b_k)`.
pub fn cut_set_value(k: usize, members: &[bool]) -> usize {
    assert_eq!(members.len(), 2 * k, "indicator must have length 2k");
    (0..k).filter(|&i| members[i] && !members[k + i]).count()
}

/// Multilinear extension of the directed cut: `Σ_i x_{a_i} (1 - x_{b_i})`.
pub fn multilinear_cut_value(k: usize, x: &[f64]) -> Result<f64> {
    if x.len() != 2 * k {
        return Err(Error::DimensionMismatch {
            expected: 2 * k,
            found: x.len(),
        });
    }
    check_point(2 * k, x)?;
    Ok((0..k).map(|i| x[i] * (1.0 - x[k + i])).sum())
}

/// [`multilinear_cut_value`] as an [`Objective`] over `[0,1]^{2k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutObjective {
    k: usize,
}

impl CutObjective {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("cut objective needs k >= 1"));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl Objective for CutObjective {
    fn dim(&self) -> usize {
        2 * self.k
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        multilinear_cut_value(self.k, x)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point(2 * self.k, x)?;
        let k = self.k;
        let mut g = vec![0.0; 2 * k];
        for i in 0..k {
            g[i] = 1.0 - x[k + i];
            g[k + i] = -x[i];
        }
        Ok(g)
    }

    /// Frobenius norm of the Hessian, `sqrt(2k)`.
    fn smoothness(&self) -> Option<f64> {
        Some((2.0 * self.k as f64).sqrt())
    }
}
