use crate::error::{Error, Result};
use crate::numeric::ensure_dim;
use crate::sets::FeasibleSet;

/// `{x ∈ [0,1]^n : lo <= Σ x_i <= hi}`.
///
/// With `lo > 0` the set is not down-closed; `lo = 0, hi = n` is the unit box.
#[derive(Debug, Clone, PartialEq)]
pub struct SumBoxPolytope {
    n: usize,
    lo: f64,
    hi: f64,
}

impl SumBoxPolytope {
    pub fn new(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("SumBoxPolytope needs n >= 1"));
        }
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi <= n as f64) {
            return Err(Error::usage(format!(
                "SumBoxPolytope bounds must satisfy 0 <= lo <= hi <= n, got lo={lo}, hi={hi}, n={n}"
            )));
        }
        Ok(Self { n, lo, hi })
    }

    pub fn unit_box(n: usize) -> Result<Self> {
        Self::new(n, 0.0, n as f64)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    fn clipped_sum(z: &[f64], shift: f64) -> f64 {
        z.iter().map(|v| (v - shift).clamp(0.0, 1.0)).sum()
    }
}

impl FeasibleSet for SumBoxPolytope {
    fn dim(&self) -> usize {
        self.n
    }

    fn lmo(&self, c: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.n, c.len())?;
        let mut order: Vec<usize> = (0..self.n).collect();
        // Stable sort keeps lower indices first among equal coefficients.
        order.sort_by(|&i, &j| c[j].total_cmp(&c[i]));

        let mut x = vec![0.0; self.n];
        let mut room = self.hi;
        for &i in &order {
            if c[i] <= 0.0 || room <= 0.0 {
                break;
            }
            x[i] = room.min(1.0);
            room -= x[i];
        }
        let mut missing = self.lo - (self.hi - room);
        for &i in &order {
            if missing <= 0.0 {
                break;
            }
            let add = (1.0 - x[i]).min(missing);
            x[i] += add;
            missing -= add;
        }
        Ok(x)
    }

    fn min_inf_norm_point(&self) -> Result<Vec<f64>> {
        Ok(vec![self.lo / self.n as f64; self.n])
    }

    /// Box clip followed by a bisection on the multiplier of whichever sum
    /// bound is active.
    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.n, z.len())?;
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("cannot project a non-finite point"));
        }
        let s0 = Self::clipped_sum(z, 0.0);
        let target = if s0 > self.hi {
            self.hi
        } else if s0 < self.lo {
            self.lo
        } else {
            return Ok(z.iter().map(|v| v.clamp(0.0, 1.0)).collect());
        };
        // clipped_sum(z, shift) is non-increasing in shift: n at min(z) - 1, 0 at max(z).
        let zmin = z.iter().cloned().fold(f64::INFINITY, f64::min);
        let zmax = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let (mut left, mut right) = (zmin - 1.0, zmax);
        for _ in 0..200 {
            let mid = 0.5 * (left + right);
            if mid <= left || mid >= right {
                break;
            }
            if Self::clipped_sum(z, mid) > target {
                left = mid;
            } else {
                right = mid;
            }
        }
        let shift = 0.5 * (left + right);
        Ok(z.iter().map(|v| (v - shift).clamp(0.0, 1.0)).collect())
    }

    fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        ensure_dim(self.n, x.len())?;
        let in_box = x.iter().all(|v| *v >= -tol && *v <= 1.0 + tol);
        let s: f64 = x.iter().sum();
        Ok(in_box && s >= self.lo - tol && s <= self.hi + tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{dot, MEMBERSHIP_TOL};

    fn grid_lmo_value(set: &SumBoxPolytope, c: &[f64], res: f64) -> f64 {
        // 2-D brute force over a grid.
        let steps = (1.0 / res).round() as usize;
        let mut best = f64::NEG_INFINITY;
        for i in 0..=steps {
            for j in 0..=steps {
                let x = [i as f64 * res, j as f64 * res];
                if set.contains(&x, 1e-12).unwrap() {
                    best = best.max(dot(c, &x));
                }
            }
        }
        best
    }

    #[test]
    fn lmo_example_against_grid() {
        let set = SumBoxPolytope::new(2, 0.1, 1.0).unwrap();
        let c = [1.0, -1.0];
        let x = set.lmo(&c).unwrap();
        assert_eq!(x, vec![1.0, 0.0]);
        let grid = grid_lmo_value(&set, &c, 1e-3);
        assert!((dot(&c, &x) - grid).abs() < 1e-9);
    }

    #[test]
    fn lmo_fills_lower_bound_with_least_negative() {
        let set = SumBoxPolytope::new(3, 1.5, 2.0).unwrap();
        let x = set.lmo(&[-3.0, -1.0, -2.0]).unwrap();
        assert_eq!(x, vec![0.0, 1.0, 0.5]);
        let zero = set.lmo(&[0.0; 3]).unwrap();
        assert!(set.contains(&zero, MEMBERSHIP_TOL).unwrap());
    }

    #[test]
    fn lmo_random_against_grid() {
        let set = SumBoxPolytope::new(2, 0.3, 1.4).unwrap();
        for c in [[0.5, 0.2], [-0.3, 0.9], [-1.0, -0.4], [0.0, -2.0]] {
            let x = set.lmo(&c).unwrap();
            assert!(set.contains(&x, MEMBERSHIP_TOL).unwrap());
            let grid = grid_lmo_value(&set, &c, 1e-3);
            assert!(dot(&c, &x) >= grid - 1e-9, "{c:?}");
        }
    }

    #[test]
    fn min_inf_norm_spreads_mass() {
        let set = SumBoxPolytope::new(2, 0.1, 1.0).unwrap();
        assert_eq!(set.min_inf_norm_point().unwrap(), vec![0.05, 0.05]);
        let down = SumBoxPolytope::new(4, 0.0, 2.0).unwrap();
        assert_eq!(down.min_inf_norm_point().unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn projection_examples() {
        let set = SumBoxPolytope::new(2, 0.0, 1.0).unwrap();
        let p = set.project(&[2.0, 2.0]).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
        let inside = [0.2, 0.3];
        assert_eq!(set.project(&inside).unwrap(), inside.to_vec());
        let lifted = SumBoxPolytope::new(3, 1.0, 2.0).unwrap().project(&[0.0; 3]).unwrap();
        for v in lifted {
            assert!((v - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn membership_examples() {
        let set = SumBoxPolytope::new(2, 0.1, 1.0).unwrap();
        assert!(set.contains(&[0.05, 0.05], MEMBERSHIP_TOL).unwrap());
        assert!(!set.contains(&[0.01, 0.01], MEMBERSHIP_TOL).unwrap());
        assert!(set.contains(&[0.1], MEMBERSHIP_TOL).is_err());
    }

    #[test]
    fn constructor_validation() {
        assert!(SumBoxPolytope::new(0, 0.0, 0.0).is_err());
        assert!(SumBoxPolytope::new(2, 0.5, 0.4).is_err());
        assert!(SumBoxPolytope::new(2, 0.0, 2.5).is_err());
        assert!(SumBoxPolytope::new(2, -0.1, 1.0).is_err());
    }

    #[test]
    fn diameter_bound() {
        assert_eq!(SumBoxPolytope::unit_box(4).unwrap().diameter_upper_bound(), 2.0);
        assert_eq!(SumBoxPolytope::unit_box(1).unwrap().diameter_upper_bound(), 1.0);
        assert_eq!(
            SumBoxPolytope::unit_box(2).unwrap().diameter_upper_bound(),
            2f64.sqrt()
        );
    }
}
