//! Online linear optimization by Regularized-Follow-the-Leader with a
//! Euclidean regularizer.
//!
//! The pick at step `t` maximizes `<x, Σ_{s<t} d(s)> - |x|^2 / (2 eta)` over
//! `K`, which is the projection of `eta · Σ d` onto `K`. With
//! `eta = D / (G sqrt(2T))` the regret against any fixed point is at most
//! `D G sqrt(2T)` whenever `|d(t)|_2 <= G` and `|x|_2 <= D` on `K`.

use crate::error::{Error, Result};
use crate::numeric::{add_assign, dot, norm2};
use crate::sets::FeasibleSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LearningRate {
    Fixed(f64),
    /// `eta = D / (G sqrt(2 T))` for a known gradient bound `G` and horizon `T`.
    Tuned { gradient_bound: f64, horizon: usize },
    /// `eta_t = D / (G_t sqrt(2 t))` with `G_t` the largest norm fed so far.
    Adaptive,
}

#[derive(Debug, Clone)]
pub struct Rftl<K> {
    set: K,
    rate: LearningRate,
    diameter: f64,
    sum: Vec<f64>,
    steps: usize,
    max_norm: f64,
    cached: Option<Vec<f64>>,
}

impl<K: FeasibleSet> Rftl<K> {
    pub fn new(set: K, rate: LearningRate) -> Result<Self> {
        match rate {
            LearningRate::Fixed(eta) if !(eta > 0.0 && eta.is_finite()) => {
                return Err(Error::usage(format!("learning rate must be positive, got {eta}")));
            }
            LearningRate::Tuned {
                gradient_bound,
                horizon,
            } if !(gradient_bound > 0.0 && gradient_bound.is_finite()) || horizon == 0 => {
                return Err(Error::usage(
                    "tuned learning rate needs a positive gradient bound and horizon",
                ));
            }
            _ => {}
        }
        let n = set.dim();
        let diameter = set.diameter_upper_bound();
        Ok(Self {
            set,
            rate,
            diameter,
            sum: vec![0.0; n],
            steps: 0,
            max_norm: 0.0,
            cached: None,
        })
    }

    /// Number of vectors fed so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Largest `|d|_2` fed so far.
    pub fn max_feed_norm(&self) -> f64 {
        self.max_norm
    }

    pub fn accumulated(&self) -> &[f64] {
        &self.sum
    }

    /// Step size used for the next pick.
    pub fn eta(&self) -> f64 {
        match self.rate {
            LearningRate::Fixed(eta) => eta,
            LearningRate::Tuned {
                gradient_bound,
                horizon,
            } => self.diameter / (gradient_bound * (2.0 * horizon as f64).sqrt()),
            LearningRate::Adaptive => {
                let t = (self.steps + 1) as f64;
                if self.max_norm > 0.0 {
                    self.diameter / (self.max_norm * (2.0 * t).sqrt())
                } else {
                    // Nothing fed or only zero vectors: Σd = 0, any eta works.
                    1.0
                }
            }
        }
    }

    /// The current decision. Computed once and cached until the next feed.
    pub fn pick(&mut self) -> Result<Vec<f64>> {
        if let Some(u) = &self.cached {
            return Ok(u.clone());
        }
        let eta = self.eta();
        let z: Vec<f64> = self.sum.iter().map(|v| eta * v).collect();
        let u = self.set.project(&z)?;
        self.cached = Some(u.clone());
        Ok(u)
    }

    pub fn feed(&mut self, d: &[f64]) -> Result<()> {
        if d.len() != self.sum.len() {
            return Err(Error::DimensionMismatch {
                expected: self.sum.len(),
                found: d.len(),
            });
        }
        if d.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("fed vector has a non-finite entry"));
        }
        add_assign(&mut self.sum, d);
        self.max_norm = self.max_norm.max(norm2(d));
        self.steps += 1;
        self.cached = None;
        Ok(())
    }
}

/// `max_{x in K} Σ <x, d(t)> - Σ <u(t), d(t)>`, the comparator found by the
/// linear oracle on `Σ d`.
pub fn regret_of<K: FeasibleSet + ?Sized>(picks: &[Vec<f64>], ds: &[Vec<f64>], set: &K) -> Result<f64> {
    if picks.len() != ds.len() {
        return Err(Error::usage(format!(
            "{} picks but {} adversarial vectors",
            picks.len(),
            ds.len()
        )));
    }
    let mut total = vec![0.0; set.dim()];
    let mut earned = 0.0;
    for (u, d) in picks.iter().zip(ds) {
        add_assign(&mut total, d);
        earned += dot(u, d);
    }
    let best = set.lmo(&total)?;
    Ok(dot(&best, &total) - earned)
}

/// `D G sqrt(2T)`.
pub fn regret_bound(diameter: f64, gradient_bound: f64, horizon: usize) -> f64 {
    diameter * gradient_bound * (2.0 * horizon as f64).sqrt()
}
