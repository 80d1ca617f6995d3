//! Reference optima for quadratic instances, used to put algorithm output on
//! an absolute scale.
//!
//! [`quadratic_max_exact`] is exact for small `n`: the maximum of a quadratic
//! over a polytope is a stationary point of the quadratic restricted to the
//! affine hull of some face, so it enumerates candidate active sets.
//! [`quadratic_max_lower_bound`] is a multi-start local search for larger `n`.

use crate::error::{Error, Result};
use crate::nmfw::{nmfw, NmfwConfig};
use crate::numeric::{dot, solve_dense};
use crate::objectives::{Objective, QuadraticObjective};
use crate::rng;
use crate::sets::{FeasibleSet, HPolytope};

/// `min_{x in {0,1}^n} ½ xᵀHx + hᵀx` and a minimizer.
///
/// Every coordinate section of such a quadratic is concave when `H_ii <= 0`,
/// so the minimum over the cube sits at a vertex. Vertices are visited in
/// Gray-code order with `O(n)` work per step.
pub fn quadratic_cube_minimum(obj: &QuadraticObjective) -> Result<(f64, Vec<f64>)> {
    let n = obj.dim();
    if n > 26 {
        return Err(Error::usage(format!("vertex enumeration needs n <= 26, got {n}")));
    }
    let hess = obj.hessian();
    let lin = obj.linear();
    let mut x = vec![false; n];
    let mut hx = vec![0.0; n];
    let mut value = 0.0;
    let mut best = 0.0;
    let mut best_x = vec![false; n];
    for step in 1u64..(1u64 << n) {
        let j = step.trailing_zeros() as usize;
        if x[j] {
            value += -hx[j] + 0.5 * hess[j][j] - lin[j];
            for (acc, row) in hx.iter_mut().zip(hess) {
                *acc -= row[j];
            }
        } else {
            value += hx[j] + 0.5 * hess[j][j] + lin[j];
            for (acc, row) in hx.iter_mut().zip(hess) {
                *acc += row[j];
            }
        }
        x[j] = !x[j];
        if value < best {
            best = value;
            best_x.clone_from(&x);
        }
    }
    Ok((best, best_x.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()))
}

const EXACT_MAX_DIM: usize = 6;

/// Global maximum of a quadratic over `{x in [0,1]^n : Ax <= b}`.
///
/// Enumerates every set of at most `n` constraints taken as equalities,
/// solves the stationarity system on that affine subspace when it is
/// non-singular, and keeps the best feasible candidate. Singular systems are
/// skipped: their maxima, if any, are attained on smaller faces too.
pub fn quadratic_max_exact(obj: &QuadraticObjective, set: &HPolytope) -> Result<(f64, Vec<f64>)> {
    let n = obj.dim();
    if n > EXACT_MAX_DIM {
        return Err(Error::usage(format!(
            "exact enumeration supports n <= {EXACT_MAX_DIM}, got {n}"
        )));
    }
    if set.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: set.dim(),
        });
    }
    // All constraints as rows `c x <= e`: polytope rows, then x_i <= 1, then -x_i <= 0.
    let mut rows: Vec<(Vec<f64>, f64)> = set
        .a()
        .iter()
        .cloned()
        .zip(set.b().iter().copied())
        .collect();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        rows.push((e.clone(), 1.0));
        e[i] = -1.0;
        rows.push((e, 0.0));
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut active = Vec::with_capacity(n);
    let mut consider = |active: &[usize]| -> Result<()> {
        if let Some(x) = stationary_point(obj, &rows, active) {
            if set.contains(&x, 1e-9)? {
                let x: Vec<f64> = x.iter().map(|v| v.clamp(0.0, 1.0) + 0.0).collect();
                let v = obj.value(&x)?;
                if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
                    best = Some((v, x));
                }
            }
        }
        Ok(())
    };
    for_each_subset(rows.len(), n, &mut active, 0, &mut consider)?;
    best.ok_or(Error::Infeasible)
}

fn for_each_subset<F>(
    total: usize,
    max_size: usize,
    current: &mut Vec<usize>,
    from: usize,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    visit(current)?;
    if current.len() == max_size {
        return Ok(());
    }
    for next in from..total {
        current.push(next);
        for_each_subset(total, max_size, current, next + 1, visit)?;
        current.pop();
    }
    Ok(())
}

/// Solves `[H Cᵀ; C 0] [x; λ] = [-h; e]` for the rows in `active`.
fn stationary_point(
    obj: &QuadraticObjective,
    rows: &[(Vec<f64>, f64)],
    active: &[usize],
) -> Option<Vec<f64>> {
    let n = obj.dim();
    let k = active.len();
    let size = n + k;
    let mut a = vec![vec![0.0; size]; size];
    let mut rhs = vec![0.0; size];
    for i in 0..n {
        a[i][..n].copy_from_slice(&obj.hessian()[i]);
        rhs[i] = -obj.linear()[i];
    }
    for (r, &idx) in active.iter().enumerate() {
        let (c, e) = &rows[idx];
        for i in 0..n {
            a[i][n + r] = c[i];
            a[n + r][i] = c[i];
        }
        rhs[n + r] = *e;
    }
    let sol = solve_dense(a, rhs)?;
    Some(sol[..n].to_vec())
}

/// Best value found by local searches from `starts` seeded starting points
/// plus the NMFW output. A lower bound on the true maximum.
pub fn quadratic_max_lower_bound<K>(
    obj: &QuadraticObjective,
    set: &K,
    starts: usize,
    seed: u64,
) -> Result<(f64, Vec<f64>)>
where
    K: FeasibleSet + ?Sized,
{
    let n = obj.dim();
    let mut r = rng::stream(seed, "reference/starts");
    let mut initial = vec![set.min_inf_norm_point()?];
    let run = nmfw(obj, set, &NmfwConfig::from_eps(0.01)?)?;
    initial.push(run.best_point().to_vec());
    for _ in 0..starts {
        let c: Vec<f64> = (0..n).map(|_| 2.0 * rng::uniform(&mut r) - 1.0).collect();
        let a = set.lmo(&c)?;
        let b = set.lmo(&obj.gradient(&a)?)?;
        let t = rng::uniform(&mut r);
        initial.push(a.iter().zip(&b).map(|(x, y)| (1.0 - t) * x + t * y).collect());
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for x0 in initial {
        let x = frank_wolfe_ascent(obj, set, x0, 1000)?;
        let v = obj.value(&x)?;
        if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
            best = Some((v, x));
        }
    }
    Ok(best.expect("at least two starts"))
}

/// Classic Frank-Wolfe with exact line search on the quadratic; converges to
/// a stationary point.
fn frank_wolfe_ascent<K>(obj: &QuadraticObjective, set: &K, mut x: Vec<f64>, iterations: usize) -> Result<Vec<f64>>
where
    K: FeasibleSet + ?Sized,
{
    for _ in 0..iterations {
        let g = obj.gradient(&x)?;
        let s = set.lmo(&g)?;
        let d: Vec<f64> = s.iter().zip(&x).map(|(a, b)| a - b).collect();
        let slope = dot(&g, &d);
        if slope <= 1e-12 {
            break;
        }
        let curvature: f64 = obj
            .hessian()
            .iter()
            .zip(&d)
            .map(|(row, di)| di * dot(row, &d))
            .sum();
        let gamma = if curvature < 0.0 {
            (-slope / curvature).min(1.0)
        } else {
            1.0
        };
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi = (*xi + gamma * di).clamp(0.0, 1.0);
        }
    }
    Ok(x)
}
