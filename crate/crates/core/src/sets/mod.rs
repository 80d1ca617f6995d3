//! Convex bodies `K ⊆ [0,1]^n` seen through the oracles the solvers need.
//!
//! Every implementation is immutable after construction, so a set can be
//! shared by reference across the `L` online optimizers of a Meta-Frank-Wolfe
//! run or across threads.

mod hpolytope;
mod product;
mod sum_box;
mod vertex_hull;

pub use hpolytope::HPolytope;
pub use product::ProductSet;
pub use sum_box::SumBoxPolytope;
pub use vertex_hull::VertexHull;

use crate::error::Result;

pub trait FeasibleSet: Send + Sync {
    fn dim(&self) -> usize;

    /// A maximizer of `<c, x>` over the set. Ties go to the lowest coordinate
    /// or vertex index.
    fn lmo(&self, c: &[f64]) -> Result<Vec<f64>>;

    /// A member with the smallest infinity norm.
    fn min_inf_norm_point(&self) -> Result<Vec<f64>>;

    /// Euclidean projection of `z` onto the set.
    fn project(&self, z: &[f64]) -> Result<Vec<f64>>;

    fn contains(&self, x: &[f64], tol: f64) -> Result<bool>;

    /// `sqrt(n)`, valid for any subset of the unit cube.
    fn diameter_upper_bound(&self) -> f64 {
        (self.dim() as f64).sqrt()
    }
}

impl<K: FeasibleSet + ?Sized> FeasibleSet for &K {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn lmo(&self, c: &[f64]) -> Result<Vec<f64>> {
        (**self).lmo(c)
    }
    fn min_inf_norm_point(&self) -> Result<Vec<f64>> {
        (**self).min_inf_norm_point()
    }
    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        (**self).project(z)
    }
    fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        (**self).contains(x, tol)
    }
    fn diameter_upper_bound(&self) -> f64 {
        (**self).diameter_upper_bound()
    }
}

impl<K: FeasibleSet + ?Sized> FeasibleSet for Box<K> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn lmo(&self, c: &[f64]) -> Result<Vec<f64>> {
        (**self).lmo(c)
    }
    fn min_inf_norm_point(&self) -> Result<Vec<f64>> {
        (**self).min_inf_norm_point()
    }
    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        (**self).project(z)
    }
    fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        (**self).contains(x, tol)
    }
    fn diameter_upper_bound(&self) -> f64 {
        (**self).diameter_upper_bound()
    }
}
