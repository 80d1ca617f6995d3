use std::path::Path;

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus};
use crate::numeric::{dist2, dot, ensure_dim, solve_dense};
use crate::sets::FeasibleSet;

const DYKSTRA_MAX_SWEEPS: usize = 10_000;
const DYKSTRA_TOL: f64 = 1e-8;

/// `{x ∈ [0,1]^n : A x <= b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    n: usize,
}

impl HPolytope {
    /// Checks shapes and that the region is non-empty.
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("HPolytope needs n >= 1"));
        }
        let probe = LinearProgram::new(a.clone(), b.clone(), vec![0.0; n])?;
        if lp::solve(&probe)?.status == LpStatus::Infeasible {
            return Err(Error::Infeasible);
        }
        Ok(Self { a, b, n })
    }

    /// Parses the plain-text format: a header line `m n`, then `m` rows of
    /// `n + 1` whitespace-separated numbers (the row of `A` followed by `b_i`).
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: origin.to_path_buf(),
            line,
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing `m n` header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(hline, format!("bad header: {e}")))?;
        let [m, n] = dims[..] else {
            return Err(parse_err(hline, "header must be `m n`".into()));
        };
        let mut a = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| parse_err(hline, format!("expected {m} constraint rows")))?;
            let nums: Vec<f64> = row
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| parse_err(ln, format!("bad number: {e}")))?;
            if nums.len() != n + 1 {
                return Err(parse_err(
                    ln,
                    format!("expected {} numbers, found {}", n + 1, nums.len()),
                ));
            }
            b.push(nums[n]);
            a.push(nums[..n].to_vec());
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing data after constraint rows".into()));
        }
        Self::new(a, b, n)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path)
    }

    pub fn a(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    fn row_violation(&self, x: &[f64]) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| dot(row, x) - bi)
            .fold(0.0f64, f64::max)
    }

    /// Dykstra's alternating projections over the halfspaces and the box.
    fn dykstra(&self, z: &[f64]) -> Result<Vec<f64>> {
        let m = self.a.len();
        let mut x = z.to_vec();
        let mut incr = vec![vec![0.0; self.n]; m + 1];
        let norms: Vec<f64> = self.a.iter().map(|r| dot(r, r)).collect();
        let mut y = vec![0.0; self.n];
        for _ in 0..DYKSTRA_MAX_SWEEPS {
            let mut change = 0.0f64;
            for k in 0..=m {
                for i in 0..self.n {
                    y[i] = x[i] + incr[k][i];
                }
                let projected: Vec<f64> = if k < m {
                    let excess = dot(&self.a[k], &y) - self.b[k];
                    if excess > 0.0 && norms[k] > 0.0 {
                        let t = excess / norms[k];
                        y.iter().zip(&self.a[k]).map(|(v, a)| v - t * a).collect()
                    } else {
                        y.clone()
                    }
                } else {
                    y.iter().map(|v| v.clamp(0.0, 1.0)).collect()
                };
                for i in 0..self.n {
                    let new_incr = y[i] - projected[i];
                    change = change.max((new_incr - incr[k][i]).abs());
                    change = change.max((projected[i] - x[i]).abs());
                    incr[k][i] = new_incr;
                    x[i] = projected[i];
                }
            }
            if change < DYKSTRA_TOL {
                return Ok(x);
            }
        }
        Err(Error::Convergence {
            routine: "Dykstra projection",
            iterations: DYKSTRA_MAX_SWEEPS,
            best: x,
        })
    }

    /// Solves the projection exactly on the face suggested by `approx` and
    /// keeps it only if the KKT conditions hold.
    fn polish(&self, z: &[f64], approx: &[f64]) -> Option<Vec<f64>> {
        const ACTIVE: f64 = 1e-6;
        const KKT: f64 = 1e-9;
        // Some(bound) for coordinates pinned at 0.0 or 1.0.
        let fixed: Vec<Option<f64>> = approx
            .iter()
            .map(|&v| {
                if v <= ACTIVE {
                    Some(0.0)
                } else if v >= 1.0 - ACTIVE {
                    Some(1.0)
                } else {
                    None
                }
            })
            .collect();
        let active: Vec<usize> = (0..self.a.len())
            .filter(|&i| dot(&self.a[i], approx) >= self.b[i] - ACTIVE)
            .collect();
        let free: Vec<usize> = (0..self.n).filter(|&j| fixed[j].is_none()).collect();

        // x_free = z_free - A_R,freeᵀ λ with A_R,free x_free = b_R - A_R,fixed x_fixed.
        let r = active.len();
        let lambda = if r == 0 {
            Vec::new()
        } else {
            let mut gram = vec![vec![0.0; r]; r];
            let mut rhs = vec![0.0; r];
            for (p, &i) in active.iter().enumerate() {
                for (q, &k) in active.iter().enumerate() {
                    gram[p][q] = free.iter().map(|&j| self.a[i][j] * self.a[k][j]).sum();
                }
                let fixed_part: f64 = (0..self.n)
                    .filter_map(|j| fixed[j].map(|v| self.a[i][j] * v))
                    .sum();
                let free_part: f64 = free.iter().map(|&j| self.a[i][j] * z[j]).sum();
                rhs[p] = free_part - (self.b[i] - fixed_part);
            }
            solve_dense(gram, rhs)?
        };
        if lambda.iter().any(|l| *l < -KKT) {
            return None;
        }
        let mut x = vec![0.0; self.n];
        for j in 0..self.n {
            let shifted = z[j]
                - active
                    .iter()
                    .zip(&lambda)
                    .map(|(&i, l)| l * self.a[i][j])
                    .sum::<f64>();
            match fixed[j] {
                None => x[j] = shifted,
                Some(bound) => {
                    let consistent = if bound == 0.0 {
                        shifted <= KKT
                    } else {
                        shifted >= 1.0 - KKT
                    };
                    if !consistent {
                        return None;
                    }
                    x[j] = bound;
                }
            }
        }
        let in_box = x.iter().all(|v| (-KKT..=1.0 + KKT).contains(v));
        if !in_box || self.row_violation(&x) > KKT {
            return None;
        }
        Some(x.into_iter().map(|v| v.clamp(0.0, 1.0)).collect())
    }
}

impl FeasibleSet for HPolytope {
    fn dim(&self) -> usize {
        self.n
    }

    fn lmo(&self, c: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.n, c.len())?;
        let sol = lp::maximize(&self.a, &self.b, c)?;
        match sol.status {
            LpStatus::Optimal => Ok(sol.x),
            LpStatus::Infeasible => Err(Error::Infeasible),
        }
    }

    /// Auxiliary LP over `(x, t)`: maximize `-t` subject to `A x <= b` and
    /// `x_i - t <= 0`.
    fn min_inf_norm_point(&self) -> Result<Vec<f64>> {
        let n = self.n;
        let mut a: Vec<Vec<f64>> = self
            .a
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(0.0);
                r
            })
            .collect();
        let mut b = self.b.clone();
        for i in 0..n {
            let mut r = vec![0.0; n + 1];
            r[i] = 1.0;
            r[n] = -1.0;
            a.push(r);
            b.push(0.0);
        }
        let mut c = vec![0.0; n + 1];
        c[n] = -1.0;
        let sol = lp::maximize(&a, &b, &c)?;
        match sol.status {
            LpStatus::Optimal => Ok(sol.x[..n].to_vec()),
            LpStatus::Infeasible => Err(Error::Infeasible),
        }
    }

    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.n, z.len())?;
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("cannot project a non-finite point"));
        }
        let approx = self.dykstra(z)?;
        Ok(match self.polish(z, &approx) {
            Some(exact) if dist2(&exact, &approx) < 1e-4 => exact,
            _ => approx,
        })
    }

    fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        ensure_dim(self.n, x.len())?;
        let in_box = x.iter().all(|v| *v >= -tol && *v <= 1.0 + tol);
        Ok(in_box && self.row_violation(x) <= tol)
    }
}
