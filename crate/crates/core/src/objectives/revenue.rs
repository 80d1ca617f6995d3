use crate::error::{Error, Result};
use crate::objectives::{check_point, Objective};

/// Expected word-of-mouth revenue on an undirected weighted graph:
///
/// ```text
/// F(x) = Σ_i Σ_{j≠i} w_ij (1 - q^{x_i}) q^{x_j},   q = 1 - p
/// ```
///
/// Each stored edge `{i, j}` contributes `w` in both orders of the double sum.
#[derive(Debug, Clone)]
pub struct RevenueObjective {
    /// Symmetric adjacency; parallel edges merged, self-loops dropped.
    adjacency: Vec<Vec<(usize, f64)>>,
    p: f64,
    ln_q: f64,
}

impl RevenueObjective {
    pub fn new(n: usize, edges: &[(usize, usize, f64)], p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("revenue objective needs at least one vertex"));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::usage(format!("p must lie in (0, 1), got {p}")));
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::usage(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::usage(format!("edge ({i}, {j}) has invalid weight {w}")));
            }
            if i == j {
                continue;
            }
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for list in adjacency.iter_mut() {
            list.sort_by_key(|e| e.0);
            list.dedup_by(|later, first| {
                if later.0 == first.0 {
                    first.1 += later.1;
                    true
                } else {
                    false
                }
            });
        }
        Ok(Self {
            adjacency,
            p,
            ln_q: (1.0 - p).ln(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn q_pow(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|v| (self.ln_q * v).exp()).collect()
    }
}

impl Objective for RevenueObjective {
    fn dim(&self) -> usize {
        self.adjacency.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_point(self.dim(), x)?;
        let qx = self.q_pow(x);
        let mut total = 0.0;
        for (i, list) in self.adjacency.iter().enumerate() {
            let advocate = 1.0 - qx[i];
            if advocate == 0.0 {
                continue;
            }
            let reach: f64 = list.iter().map(|&(j, w)| w * qx[j]).sum();
            total += advocate * reach;
        }
        Ok(total)
    }

    /// `∂F/∂x_r = -ln q · q^{x_r} · [Σ_j w_rj q^{x_j} - Σ_i w_ir (1 - q^{x_i})]`.
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point(self.dim(), x)?;
        let qx = self.q_pow(x);
        Ok(self
            .adjacency
            .iter()
            .enumerate()
            .map(|(r, list)| {
                let bracket: f64 = list
                    .iter()
                    .map(|&(j, w)| w * qx[j] - w * (1.0 - qx[j]))
                    .sum();
                -self.ln_q * qx[r] * bracket
            })
            .collect())
    }

    /// Gershgorin bound `3 (ln q)^2 · max weighted degree`.
    fn smoothness(&self) -> Option<f64> {
        let max_degree = self
            .adjacency
            .iter()
            .map(|l| l.iter().map(|e| e.1).sum::<f64>())
            .fold(0.0, f64::max);
        Some(3.0 * self.ln_q * self.ln_q * max_degree)
    }
}
