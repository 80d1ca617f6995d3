//! Dense vector helpers shared by every other module.
//!
//! Points are plain `Vec<f64>` / `&[f64]`. Functions that combine two vectors
//! check dimensions and return [`Error::DimensionMismatch`] on disagreement.

use crate::error::{Error, Result};

/// Tolerance used for feasibility checks of points.
pub const FEAS_TOL: f64 = 1e-9;
/// Tolerance for finite-difference gradient checks.
pub const GRAD_TOL: f64 = 1e-4;
/// Default tolerance for set membership queries.
pub const MEMBERSHIP_TOL: f64 = 1e-7;

pub fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Rejects points with a coordinate outside `[0, 1]` beyond [`FEAS_TOL`].
pub fn ensure_unit_box(x: &[f64]) -> Result<()> {
    for (index, &value) in x.iter().enumerate() {
        if !(value >= -FEAS_TOL && value <= 1.0 + FEAS_TOL) {
            return Err(Error::OutOfBox { index, value });
        }
    }
    Ok(())
}

/// Coordinate-wise maximum `x ∨ y`.
pub fn join(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    ensure_dim(x.len(), y.len())?;
    Ok(x.iter().zip(y).map(|(a, b)| a.max(*b)).collect())
}

/// Coordinate-wise minimum `x ∧ y`.
pub fn meet(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    ensure_dim(x.len(), y.len())?;
    Ok(x.iter().zip(y).map(|(a, b)| a.min(*b)).collect())
}

pub fn inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// Inner product. Panics on length mismatch; callers validate first.
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "dot: dimension mismatch");
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), y.len(), "sub: dimension mismatch");
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn dist2(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "dist2: dimension mismatch");
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// `(1 - eps) * x + eps * s`, written in place into `x`.
pub fn convex_step(x: &mut [f64], s: &[f64], eps: f64) {
    assert_eq!(x.len(), s.len(), "convex_step: dimension mismatch");
    for (xi, si) in x.iter_mut().zip(s) {
        *xi = (1.0 - eps) * *xi + eps * si;
    }
}

pub fn add_assign(x: &mut [f64], y: &[f64]) {
    assert_eq!(x.len(), y.len(), "add_assign: dimension mismatch");
    for (a, b) in x.iter_mut().zip(y) {
        *a += b;
    }
}

/// Maximum absolute deviation between a central-difference gradient of
/// `value` and the analytic `gradient` at `x`.
///
/// `x` must sit at least `step` inside `[0, 1]^n` so that both probes stay in
/// the domain.
pub fn check_gradient<F, G>(value: F, gradient: G, x: &[f64], step: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let analytic = gradient(x);
    assert_eq!(analytic.len(), x.len(), "gradient has wrong dimension");
    let mut probe = x.to_vec();
    let mut worst = 0.0f64;
    for i in 0..x.len() {
        probe[i] = x[i] + step;
        let hi = value(&probe);
        probe[i] = x[i] - step;
        let lo = value(&probe);
        probe[i] = x[i];
        let fd = (hi - lo) / (2.0 * step);
        worst = worst.max((fd - analytic[i]).abs());
    }
    worst
}

/// Solves the dense square system `a x = b` by Gaussian elimination with
/// partial pivoting. Returns `None` when a pivot falls below `1e-12` times the
/// largest entry.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1e-300);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn join_meet_examples() {
        assert_eq!(join(&[0.2, 0.8], &[0.5, 0.1]).unwrap(), vec![0.5, 0.8]);
        assert_eq!(meet(&[0.2, 0.8], &[0.5, 0.1]).unwrap(), vec![0.2, 0.1]);
        let x = [0.3, 0.6, 0.9];
        assert_eq!(join(&x, &x).unwrap(), x.to_vec());
        assert_eq!(meet(&x, &x).unwrap(), x.to_vec());
        assert_eq!(join(&[0.0, 0.0], &[0.4, 0.7]).unwrap(), vec![0.4, 0.7]);
        assert_eq!(meet(&[1.0, 1.0], &[0.4, 0.7]).unwrap(), vec![0.4, 0.7]);
    }

    #[test]
    fn join_rejects_mismatch() {
        assert!(matches!(
            join(&[0.1], &[0.1, 0.2]),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
        assert!(meet(&[0.1, 0.2, 0.3], &[0.1]).is_err());
    }

    #[test]
    fn inf_norm_examples() {
        assert_eq!(inf_norm(&[0.05, 0.05]), 0.05);
        assert_eq!(inf_norm(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(inf_norm(&[0.3, -0.7]), 0.7);
    }

    #[test]
    fn unit_box_guard() {
        assert!(ensure_unit_box(&[0.0, 1.0, 1.0 + 1e-10]).is_ok());
        assert!(matches!(
            ensure_unit_box(&[0.5, 1.1]),
            Err(Error::OutOfBox { index: 1, .. })
        ));
        assert!(ensure_unit_box(&[f64::NAN]).is_err());
    }

    #[test]
    fn gradient_check_linear_is_exact() {
        let c = [0.3, -1.2, 2.5];
        let dev = check_gradient(
            |x| dot(&c, x),
            |_| c.to_vec(),
            &[0.4, 0.5, 0.6],
            1e-5,
        );
        assert!(dev < 1e-10, "{dev}");
    }

    #[test]
    fn gradient_check_quadratic() {
        // F(x) = 1/2 x^T H x + h^T x with symmetric H.
        let h_mat = [[-1.0, -0.5], [-0.5, -2.0]];
        let h = [0.7, 0.2];
        let value = |x: &[f64]| {
            let mut v = h[0] * x[0] + h[1] * x[1];
            for i in 0..2 {
                for j in 0..2 {
                    v += 0.5 * x[i] * h_mat[i][j] * x[j];
                }
            }
            v
        };
        let grad = |x: &[f64]| {
            (0..2)
                .map(|i| h[i] + h_mat[i][0] * x[0] + h_mat[i][1] * x[1])
                .collect()
        };
        let dev = check_gradient(value, grad, &[0.3, 0.8], 1e-5);
        assert!(dev < 1e-6, "{dev}");
    }

    #[test]
    fn solve_dense_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_dense(a, vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve_dense(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }

    proptest! {
        #[test]
        fn join_plus_meet_is_sum(pairs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..12)) {
            let x: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let j = join(&x, &y).unwrap();
            let m = meet(&x, &y).unwrap();
            for i in 0..x.len() {
                prop_assert_eq!(j[i] + m[i], x[i] + y[i]);
            }
            prop_assert!(inf_norm(&j) >= inf_norm(&x));
        }
    }
}
