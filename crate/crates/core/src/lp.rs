//! Dense bounded-variable simplex for
//!
//! ```text
//! maximize  c^T x   subject to   A x <= b,   0 <= x <= upper
//! ```
//!
//! Upper bounds are handled implicitly: a nonbasic variable sits at either of
//! its bounds and the ratio test includes the bound flip. Rows with negative
//! right-hand side get an artificial variable and a phase-one objective.
//!
//! Pricing is largest reduced cost. After `3n` consecutive degenerate pivots
//! the solver switches to Bland's rule for the rest of the solve.

use crate::error::{Error, Result};
use crate::numeric::FEAS_TOL;

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const DEGENERATE_STEP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
    upper: Vec<f64>,
}

impl LinearProgram {
    /// A program over the unit box: every variable in `[0, 1]`.
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        let n = c.len();
        Self::with_upper_bounds(a, b, c, vec![1.0; n])
    }

    pub fn with_upper_bounds(
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        c: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self> {
        let n = c.len();
        if n == 0 {
            return Err(Error::usage("linear program needs at least one variable"));
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if upper.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: upper.len(),
            });
        }
        for row in &a {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let finite = |v: &f64| v.is_finite();
        if !a.iter().flatten().all(finite) || !b.iter().all(finite) || !c.iter().all(finite) {
            return Err(Error::usage("linear program data must be finite"));
        }
        if !upper.iter().all(|u| u.is_finite() && *u >= 0.0) {
            return Err(Error::usage("upper bounds must be finite and non-negative"));
        }
        Ok(Self { a, b, c, upper })
    }

    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn num_rows(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// True when `x` satisfies every row and bound within `tol`.
    pub fn is_feasible(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.num_vars()
            && x
                .iter()
                .zip(&self.upper)
                .all(|(v, u)| *v >= -tol && *v <= u + tol)
            && self.a.iter().zip(&self.b).all(|(row, bi)| {
                row.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() <= bi + tol
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub status: LpStatus,
}

/// Solves `lp`. An empty region is reported through [`LpStatus::Infeasible`];
/// the only error is an exhausted iteration budget.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let mut tableau = Tableau::build(lp);
    if tableau.num_artificial > 0 {
        let phase_one: Vec<f64> = (0..tableau.ncols)
            .map(|j| if j >= tableau.first_artificial { -1.0 } else { 0.0 })
            .collect();
        tableau.optimize(&phase_one)?;
        let residual: f64 = (tableau.first_artificial..tableau.ncols)
            .map(|j| tableau.value[j])
            .sum();
        let scale = 1.0 + lp.b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if residual > 1e-9 * scale {
            return Ok(LpSolution {
                x: vec![0.0; lp.num_vars()],
                objective: f64::NAN,
                status: LpStatus::Infeasible,
            });
        }
        // Pin artificials at zero; basic ones stay there through the ratio test.
        for j in tableau.first_artificial..tableau.ncols {
            tableau.upper[j] = 0.0;
            tableau.value[j] = 0.0;
            tableau.at_upper[j] = false;
        }
    }
    let mut phase_two = vec![0.0; tableau.ncols];
    phase_two[..lp.num_vars()].copy_from_slice(&lp.c);
    tableau.optimize(&phase_two)?;

    let x: Vec<f64> = (0..lp.num_vars())
        .map(|j| tableau.value[j].clamp(0.0, lp.upper[j]))
        .collect();
    let objective = x.iter().zip(&lp.c).map(|(v, c)| v * c).sum();
    Ok(LpSolution {
        x,
        objective,
        status: LpStatus::Optimal,
    })
}

/// Convenience: maximize `c` over `{x in [0,1]^n : A x <= b}`.
pub fn maximize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<LpSolution> {
    solve(&LinearProgram::new(a.to_vec(), b.to_vec(), c.to_vec())?)
}

struct Tableau {
    nvars: usize,
    ncols: usize,
    first_artificial: usize,
    num_artificial: usize,
    /// `B^{-1} A`, one row per constraint.
    rows: Vec<Vec<f64>>,
    /// `B^{-1} b`, used to recompute basic values exactly.
    rhs: Vec<f64>,
    upper: Vec<f64>,
    value: Vec<f64>,
    at_upper: Vec<bool>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.num_rows();
        let num_artificial = lp.b.iter().filter(|v| **v < 0.0).count();
        let first_artificial = n + m;
        let ncols = n + m + num_artificial;

        let mut rows = vec![vec![0.0; ncols]; m];
        let mut rhs = vec![0.0; m];
        let mut basis = vec![0; m];
        let mut upper = vec![f64::INFINITY; ncols];
        upper[..n].copy_from_slice(&lp.upper);
        let mut value = vec![0.0; ncols];
        let mut next_art = first_artificial;
        for i in 0..m {
            let sign = if lp.b[i] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                rows[i][j] = sign * lp.a[i][j];
            }
            rows[i][n + i] = sign;
            rhs[i] = sign * lp.b[i];
            if sign < 0.0 {
                rows[i][next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            } else {
                basis[i] = n + i;
            }
            value[basis[i]] = rhs[i];
        }
        let mut is_basic = vec![false; ncols];
        for &j in &basis {
            is_basic[j] = true;
        }
        Self {
            nvars: n,
            ncols,
            first_artificial,
            num_artificial,
            rows,
            rhs,
            upper,
            value,
            at_upper: vec![false; ncols],
            basis,
            is_basic,
        }
    }

    fn optimize(&mut self, cost: &[f64]) -> Result<()> {
        let m = self.rows.len();
        let mut reduced: Vec<f64> = cost.to_vec();
        for i in 0..m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (r, t) in reduced.iter_mut().zip(&self.rows[i]) {
                    *r -= cb * t;
                }
            }
        }

        let max_iterations = 1000 + 50 * (m + self.ncols);
        let degenerate_limit = 3 * self.nvars.max(1);
        let mut degenerate_run = 0usize;
        let mut bland = false;

        for _ in 0..max_iterations {
            let Some(entering) = self.choose_entering(&reduced, bland) else {
                self.refresh_basic_values();
                return Ok(());
            };
            let dir = if self.at_upper[entering] { -1.0 } else { 1.0 };

            // Ratio test; `None` leaving row means the entering variable flips bounds.
            let mut theta = self.upper[entering];
            let mut leaving: Option<usize> = None;
            for i in 0..m {
                let a = dir * self.rows[i][entering];
                let bi = self.basis[i];
                let limit = if a > PIVOT_TOL {
                    self.value[bi] / a
                } else if a < -PIVOT_TOL && self.upper[bi].is_finite() {
                    (self.upper[bi] - self.value[bi]) / -a
                } else {
                    continue;
                };
                let limit = limit.max(0.0);
                let better = match leaving {
                    _ if limit < theta - DEGENERATE_STEP => true,
                    Some(r) if limit <= theta + DEGENERATE_STEP => {
                        if bland {
                            bi < self.basis[r]
                        } else {
                            a.abs() > (dir * self.rows[r][entering]).abs()
                        }
                    }
                    _ => false,
                };
                if better {
                    theta = limit;
                    leaving = Some(i);
                }
            }
            if !theta.is_finite() {
                return Err(Error::usage("linear program is unbounded"));
            }

            if theta <= DEGENERATE_STEP {
                degenerate_run += 1;
                if degenerate_run > degenerate_limit {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }

            for i in 0..m {
                let bi = self.basis[i];
                self.value[bi] -= dir * theta * self.rows[i][entering];
            }
            self.value[entering] += dir * theta;

            match leaving {
                None => {
                    self.at_upper[entering] = !self.at_upper[entering];
                    self.value[entering] = if self.at_upper[entering] {
                        self.upper[entering]
                    } else {
                        0.0
                    };
                }
                Some(r) => {
                    let out = self.basis[r];
                    let to_lower = dir * self.rows[r][entering] > 0.0;
                    self.at_upper[out] = !to_lower;
                    self.value[out] = if to_lower { 0.0 } else { self.upper[out] };
                    self.is_basic[out] = false;
                    self.is_basic[entering] = true;
                    self.at_upper[entering] = false;
                    self.basis[r] = entering;
                    self.pivot(r, entering, &mut reduced);
                }
            }
        }
        Err(Error::Convergence {
            routine: "simplex",
            iterations: max_iterations,
            best: self.value[..self.nvars].to_vec(),
        })
    }

    fn choose_entering(&self, reduced: &[f64], bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.ncols {
            if self.is_basic[j] || self.upper[j] <= 0.0 {
                continue;
            }
            let gain = if self.at_upper[j] { -reduced[j] } else { reduced[j] };
            if gain <= COST_TOL {
                continue;
            }
            if bland {
                return Some(j);
            }
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((j, gain));
            }
        }
        best.map(|(j, _)| j)
    }

    fn pivot(&mut self, r: usize, col: usize, reduced: &mut [f64]) {
        let p = self.rows[r][col];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rhs[r] /= p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r];
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][col];
            if f != 0.0 {
                for (v, pr) in self.rows[i].iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
                self.rhs[i] -= f * pivot_rhs;
            }
        }
        let f = reduced[col];
        if f != 0.0 {
            for (v, pr) in reduced.iter_mut().zip(&pivot_row) {
                *v -= f * pr;
            }
        }
    }

    /// Recomputes basic values from `B^{-1} b` and the nonbasic values.
    fn refresh_basic_values(&mut self) {
        for i in 0..self.rows.len() {
            let mut v = self.rhs[i];
            for j in 0..self.ncols {
                if !self.is_basic[j] && self.value[j] != 0.0 {
                    v -= self.rows[i][j] * self.value[j];
                }
            }
            let bi = self.basis[i];
            let hi = self.upper[bi];
            // Snap round-off; genuine infeasibility cannot occur at this point.
            self.value[bi] = if v < 0.0 && v > -FEAS_TOL {
                0.0
            } else if v > hi && v < hi + FEAS_TOL {
                hi
            } else {
                v
            };
        }
    }
}
