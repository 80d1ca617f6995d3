use crate::error::{Error, Result};
use crate::objectives::{check_point, Objective};

/// Multilinear extension of the location-summarization set function
///
/// ```text
/// f(S) = (1/n) Σ_i max_{j ∈ S} M_ij - Σ_{i ∈ S} d_i
/// ```
///
/// For each row `i` the columns are ranked by similarity, descending, ties by
/// column index; `j` contributes `x_j M_ij Π_{j' ranked above j} (1 - x_j')`.
#[derive(Debug, Clone)]
pub struct LocationObjective {
    similarity: Vec<Vec<f64>>,
    distance: Vec<f64>,
    /// Per-row column order, most similar first.
    order: Vec<Vec<usize>>,
}

impl LocationObjective {
    pub fn new(similarity: Vec<Vec<f64>>, distance: Vec<f64>) -> Result<Self> {
        let n = distance.len();
        if n == 0 || similarity.len() != n || similarity.iter().any(|r| r.len() != n) {
            return Err(Error::usage("location objective needs an n x n similarity matrix"));
        }
        if similarity.iter().flatten().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::usage("similarities must be finite and non-negative"));
        }
        if distance.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::usage("distances must be finite and non-negative"));
        }
        let order = similarity
            .iter()
            .map(|row| {
                let mut idx: Vec<usize> = (0..n).collect();
                idx.sort_by(|&a, &b| row[b].total_cmp(&row[a]).then(a.cmp(&b)));
                idx
            })
            .collect();
        Ok(Self {
            similarity,
            distance,
            order,
        })
    }

    pub fn similarity(&self) -> &[Vec<f64>] {
        &self.similarity
    }

    pub fn distance(&self) -> &[f64] {
        &self.distance
    }

    /// Same similarities, new distances (a new user in the online setting).
    pub fn with_distance(&self, distance: Vec<f64>) -> Result<Self> {
        if distance.len() != self.distance.len() {
            return Err(Error::DimensionMismatch {
                expected: self.distance.len(),
                found: distance.len(),
            });
        }
        if distance.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::usage("distances must be finite and non-negative"));
        }
        Ok(Self {
            similarity: self.similarity.clone(),
            distance,
            order: self.order.clone(),
        })
    }

    fn n(&self) -> usize {
        self.distance.len()
    }
}

impl Objective for LocationObjective {
    fn dim(&self) -> usize {
        self.n()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_point(self.n(), x)?;
        let mut coverage = 0.0;
        for (row, order) in self.similarity.iter().zip(&self.order) {
            let mut none_above = 1.0;
            for &j in order {
                coverage += x[j] * row[j] * none_above;
                none_above *= 1.0 - x[j];
            }
        }
        let cost: f64 = x.iter().zip(&self.distance).map(|(a, d)| a * d).sum();
        Ok(coverage / self.n() as f64 - cost)
    }

    /// Per row, with columns in rank order `1..n` and `P_q = Π_{s<q} (1 - x_s)`:
    /// `∂/∂x_q = P_q (M_q - S_q)` where `S_q = M_{q+1} x_{q+1} + (1 - x_{q+1}) S_{q+1}`.
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point(self.n(), x)?;
        let n = self.n();
        let mut grad = vec![0.0; n];
        let mut prefix = vec![0.0; n];
        for (row, order) in self.similarity.iter().zip(&self.order) {
            let mut none_above = 1.0;
            for (rank, &j) in order.iter().enumerate() {
                prefix[rank] = none_above;
                none_above *= 1.0 - x[j];
            }
            let mut tail = 0.0;
            for (rank, &j) in order.iter().enumerate().rev() {
                grad[j] += prefix[rank] * (row[j] - tail);
                tail = row[j] * x[j] + (1.0 - x[j]) * tail;
            }
        }
        for (g, d) in grad.iter_mut().zip(&self.distance) {
            *g = *g / n as f64 - d;
        }
        Ok(grad)
    }

    /// Mixed partials of each row's term are bounded by `2 max M`.
    fn smoothness(&self) -> Option<f64> {
        let max_m = self.similarity.iter().flatten().fold(0.0f64, |m, v| m.max(*v));
        Some(2.0 * max_m * (self.n() as f64 - 1.0).max(1.0))
    }
}
