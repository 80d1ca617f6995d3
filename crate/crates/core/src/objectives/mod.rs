//! First-order oracles for non-negative DR-submodular objectives on `[0,1]^n`.

mod cut;
mod location;
mod noise;
mod quadratic;
mod revenue;

pub use cut::{cut_set_value, multilinear_cut_value, CutObjective};
pub use location::LocationObjective;
pub use noise::{GradientNoise, NoisyGradient};
pub use quadratic::QuadraticObjective;
pub use revenue::RevenueObjective;

use std::sync::Arc;

use crate::error::Result;
use crate::numeric::{check_gradient, dot, ensure_dim, ensure_unit_box};

/// A non-negative DR-submodular function with value and gradient oracles.
///
/// Both oracles reject points outside the unit cube.
pub trait Objective: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> Result<f64>;

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>>;

    /// An upper bound on the gradient's Lipschitz constant, when known.
    fn smoothness(&self) -> Option<f64> {
        None
    }
}

pub(crate) fn check_point(n: usize, x: &[f64]) -> Result<()> {
    ensure_dim(n, x.len())?;
    ensure_unit_box(x)
}

/// Central-difference deviation of `obj`'s gradient at `x`.
pub fn gradient_deviation<O: Objective + ?Sized>(obj: &O, x: &[f64], step: f64) -> f64 {
    check_gradient(
        |p| obj.value(p).expect("probe inside the cube"),
        |p| obj.gradient(p).expect("probe inside the cube"),
        x,
        step,
    )
}

macro_rules! forward_objective {
    ($($ty:ty),*) => {$(
        impl<O: Objective + ?Sized> Objective for $ty {
            fn dim(&self) -> usize {
                (**self).dim()
            }
            fn value(&self, x: &[f64]) -> Result<f64> {
                (**self).value(x)
            }
            fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
                (**self).gradient(x)
            }
            fn smoothness(&self) -> Option<f64> {
                (**self).smoothness()
            }
        }
    )*};
}

forward_objective!(&O, Box<O>, Arc<O>);

/// `F(x) = <c, x> + offset`. DR-submodular (both modular and concave); a
/// non-negative instance needs `offset >= Σ max(-c_i, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearObjective {
    c: Vec<f64>,
    offset: f64,
}

impl LinearObjective {
    pub fn new(c: Vec<f64>, offset: f64) -> Self {
        Self { c, offset }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }
}

impl Objective for LinearObjective {
    fn dim(&self) -> usize {
        self.c.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_point(self.c.len(), x)?;
        Ok(dot(&self.c, x) + self.offset)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point(self.c.len(), x)?;
        Ok(self.c.clone())
    }

    fn smoothness(&self) -> Option<f64> {
        Some(0.0)
    }
}
