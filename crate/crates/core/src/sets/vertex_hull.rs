use crate::error::{Error, Result};
use crate::lp::{self, LpStatus};
use crate::numeric::{dot, ensure_dim, ensure_unit_box, solve_dense};
use crate::sets::FeasibleSet;

const WOLFE_MAX_ITERATIONS: usize = 5_000;

/// Convex hull of finitely many points of `[0,1]^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexHull {
    vertices: Vec<Vec<f64>>,
    n: usize,
}

impl VertexHull {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::usage("VertexHull needs at least one vertex"))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::usage("VertexHull vertices must have dimension >= 1"));
        }
        for v in &vertices {
            ensure_dim(n, v.len())?;
            ensure_unit_box(v)?;
        }
        Ok(Self { vertices, n })
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// `Σ_i weights[i] * v_i`.
    pub fn combine(&self, weights: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.vertices.len(), weights.len())?;
        let mut x = vec![0.0; self.n];
        for (w, v) in weights.iter().zip(&self.vertices) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += w * vi;
            }
        }
        Ok(x)
    }

    /// Rows of `V λ` as constraints over the weight vector `λ`: one row per
    /// coordinate.
    fn coordinate_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.vertices.iter().map(|v| v[i]).collect())
            .collect()
    }
}

/// Wolfe's minimum-norm-point algorithm on `conv(points)`. Returns convex
/// weights over `points`.
fn min_norm_weights(points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let sq: Vec<f64> = points.iter().map(|p| dot(p, p)).collect();
    let scale = sq.iter().cloned().fold(0.0f64, f64::max).max(1e-300);
    let start = (0..points.len())
        .min_by(|&i, &j| sq[i].total_cmp(&sq[j]))
        .expect("non-empty point set");

    let mut support = vec![start];
    let mut weights = vec![1.0];
    let current = |support: &[usize], weights: &[f64]| {
        let mut x = vec![0.0; points[0].len()];
        for (&s, w) in support.iter().zip(weights) {
            for (xi, pi) in x.iter_mut().zip(&points[s]) {
                *xi += w * pi;
            }
        }
        x
    };
    let mut x = points[start].clone();

    for _ in 0..WOLFE_MAX_ITERATIONS {
        let xx = dot(&x, &x);
        let (j, xj) = points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, dot(&x, p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty point set");
        if xx - xj <= 1e-14 * scale || support.contains(&j) {
            return Ok(expand(points.len(), &support, &weights));
        }
        support.push(j);
        weights.push(0.0);

        loop {
            let Some(alpha) = affine_minimizer(points, &support) else {
                // Affinely dependent support; drop the newcomer and stop.
                support.pop();
                weights.pop();
                return Ok(expand(points.len(), &support, &weights));
            };
            if alpha.iter().all(|a| *a > 1e-12) {
                weights = alpha;
                break;
            }
            let theta = support
                .iter()
                .enumerate()
                .filter(|(k, _)| alpha[*k] <= 1e-12)
                .map(|(k, _)| weights[k] / (weights[k] - alpha[k]))
                .fold(1.0f64, f64::min)
                .max(0.0);
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = theta * a + (1.0 - theta) * *w;
            }
            let mut k = 0;
            while k < support.len() {
                if weights[k] <= 1e-12 {
                    support.remove(k);
                    weights.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            for w in weights.iter_mut() {
                *w /= total;
            }
        }
        x = current(&support, &weights);
    }
    Err(Error::Convergence {
        routine: "min-norm point",
        iterations: WOLFE_MAX_ITERATIONS,
        best: expand(points.len(), &support, &weights),
    })
}

/// Minimizer of `||Σ α_k p_k||` over the affine hull, `Σ α_k = 1`.
fn affine_minimizer(points: &[Vec<f64>], support: &[usize]) -> Option<Vec<f64>> {
    let s = support.len();
    let mut a = vec![vec![0.0; s + 1]; s + 1];
    let mut b = vec![0.0; s + 1];
    for p in 0..s {
        for q in 0..s {
            a[p][q] = dot(&points[support[p]], &points[support[q]]);
        }
        a[p][s] = 1.0;
        a[s][p] = 1.0;
    }
    b[s] = 1.0;
    let sol = solve_dense(a, b)?;
    Some(sol[..s].to_vec())
}

fn expand(len: usize, support: &[usize], weights: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (&s, w) in support.iter().zip(weights) {
        out[s] = *w;
    }
    out
}

impl FeasibleSet for VertexHull {
    fn dim(&self) -> usize {
        self.n
    }

    fn lmo(&self, c: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.n, c.len())?;
        let mut best = 0;
        let mut best_val = dot(c, &self.vertices[0]);
        for (i, v) in self.vertices.iter().enumerate().skip(1) {
            let val = dot(c, v);
            if val > best_val {
                best = i;
                best_val = val;
            }
        }
        Ok(self.vertices[best].clone())
    }

    /// LP over `(λ, t)`: maximize `-t` with `V λ <= t`, `Σ λ = 1`.
    fn min_inf_norm_point(&self) -> Result<Vec<f64>> {
        let k = self.vertices.len();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for row in self.coordinate_rows() {
            let mut r = row;
            r.push(-1.0);
            a.push(r);
            b.push(0.0);
        }
        let mut ones = vec![1.0; k];
        ones.push(0.0);
        a.push(ones.clone());
        b.push(1.0);
        a.push(ones.iter().map(|v| -v).collect());
        b.push(-1.0);
        let mut c = vec![0.0; k + 1];
        c[k] = -1.0;
        let sol = lp::maximize(&a, &b, &c)?;
        if sol.status == LpStatus::Infeasible {
            return Err(Error::Infeasible);
        }
        self.combine(&sol.x[..k])
    }

    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.n, z.len())?;
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("cannot project a non-finite point"));
        }
        let shifted: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(z).map(|(a, b)| a - b).collect())
            .collect();
        let weights = min_norm_weights(&shifted)?;
        self.combine(&weights)
    }

    /// Decided by LP feasibility of `|V λ - x| <= tol`, `Σ λ = 1`, `λ >= 0`.
    fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        ensure_dim(self.n, x.len())?;
        let k = self.vertices.len();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, row) in self.coordinate_rows().into_iter().enumerate() {
            a.push(row.iter().map(|v| -v).collect());
            b.push(-x[i] + tol);
            a.push(row);
            b.push(x[i] + tol);
        }
        a.push(vec![1.0; k]);
        b.push(1.0);
        a.push(vec![-1.0; k]);
        b.push(-1.0);
        let sol = lp::maximize(&a, &b, &vec![0.0; k])?;
        Ok(sol.status == LpStatus::Optimal)
    }
}
