//! Offline non-monotone Frank-Wolfe.
//!
//! Starts from a minimum infinity-norm member of `K`, moves a fixed fraction
//! `eps` towards the linear maximizer of the current gradient for `T` rounds,
//! and returns the best point seen.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::numeric::{convex_step, inf_norm};
use crate::objectives::Objective;
use crate::sets::FeasibleSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NmfwConfig {
    pub iterations: usize,
    pub eps: f64,
}

impl NmfwConfig {
    pub fn new(iterations: usize, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::usage(format!("eps must lie in (0, 1), got {eps}")));
        }
        if iterations == 0 {
            return Err(Error::usage("iterations must be at least 1"));
        }
        Ok(Self { iterations, eps })
    }

    /// `T = floor(ln 2 / eps)`, the schedule behind the `1/4 - 3 eps` ratio.
    pub fn from_eps(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::usage(format!("eps must lie in (0, 1), got {eps}")));
        }
        Self::new(default_steps(eps), eps)
    }
}

/// `floor(ln 2 / eps)`, at least 1.
pub fn default_steps(eps: f64) -> usize {
    ((std::f64::consts::LN_2 / eps).floor() as usize).max(1)
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    /// `y(0) ..= y(T)`.
    pub iterates: Vec<Vec<f64>>,
    /// `values[i] = F(y(i))`.
    pub values: Vec<f64>,
    /// Index of the returned iterate; the first maximizer of `values`.
    pub chosen: usize,
    pub eps: f64,
    pub elapsed: Duration,
}

impl RunRecord {
    pub fn best_point(&self) -> &[f64] {
        &self.iterates[self.chosen]
    }

    pub fn best_value(&self) -> f64 {
        self.values[self.chosen]
    }

    /// Largest violation of `1 - |y(i)|_inf >= (1 - eps)^i (1 - |y(0)|_inf)`
    /// over the run; non-positive when the decay bound holds.
    pub fn norm_decay_violation(&self) -> f64 {
        norm_decay_violation(&self.iterates, self.eps)
    }
}

pub fn nmfw<O, K>(obj: &O, set: &K, cfg: &NmfwConfig) -> Result<RunRecord>
where
    O: Objective + ?Sized,
    K: FeasibleSet + ?Sized,
{
    if obj.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: obj.dim(),
        });
    }
    let start = Instant::now();
    let mut y = set.min_inf_norm_point()?;
    let mut iterates = Vec::with_capacity(cfg.iterations + 1);
    let mut values = Vec::with_capacity(cfg.iterations + 1);
    values.push(obj.value(&y)?);
    iterates.push(y.clone());
    for _ in 0..cfg.iterations {
        let grad = obj.gradient(&y)?;
        let s = set.lmo(&grad)?;
        convex_step(&mut y, &s, cfg.eps);
        values.push(obj.value(&y)?);
        iterates.push(y.clone());
    }
    let chosen = argmax_first(&values);
    Ok(RunRecord {
        iterates,
        values,
        chosen,
        eps: cfg.eps,
        elapsed: start.elapsed(),
    })
}

fn argmax_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// See [`RunRecord::norm_decay_violation`]; works for any trajectory built
/// by `eps`-steps from `iterates[0]`.
pub fn norm_decay_violation(iterates: &[Vec<f64>], eps: f64) -> f64 {
    let Some(first) = iterates.first() else {
        return f64::NEG_INFINITY;
    };
    let slack0 = 1.0 - inf_norm(first);
    iterates
        .iter()
        .enumerate()
        .map(|(i, y)| (1.0 - eps).powi(i as i32) * slack0 - (1.0 - inf_norm(y)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Guarantee after `T` steps of size `eps`:
/// `(1-2eps)^{T-1} [(1+eps)^T - 1] (1-m) F(o) - 0.5 eps^2 beta D^2 T`.
pub fn guarantee(eps: f64, steps: usize, m: f64, opt: f64, beta: f64, diameter: f64) -> f64 {
    let t = steps as f64;
    (1.0 - 2.0 * eps).powf(t - 1.0) * ((1.0 + eps).powf(t) - 1.0) * (1.0 - m) * opt
        - 0.5 * eps * eps * beta * diameter * diameter * t
}

/// Simplified guarantee for `T = floor(ln 2 / eps)`:
/// `(1/4 - 3 eps)(1 - m) F(o) - 0.5 eps beta D^2`.
pub fn simple_guarantee(eps: f64, m: f64, opt: f64, beta: f64, diameter: f64) -> f64 {
    (0.25 - 3.0 * eps) * (1.0 - m) * opt - 0.5 * eps * beta * diameter * diameter
}

/// Largest violation over `i >= 1` of the per-step progress bound
/// `F(y(i)) >= (1-2eps) F(y(i-1)) + eps (1-eps)^{i-1} (1-|y(0)|_inf) F(o) - 0.5 eps^2 beta D^2`.
///
/// `opt` may be any lower bound on `F(o)`; the bound only weakens.
pub fn progress_violation(record: &RunRecord, opt: f64, beta: f64, diameter: f64) -> f64 {
    let eps = record.eps;
    let slack0 = 1.0 - inf_norm(&record.iterates[0]);
    let smooth = 0.5 * eps * eps * beta * diameter * diameter;
    record
        .values
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let i = k + 1;
            let bound = (1.0 - 2.0 * eps) * w[0]
                + eps * (1.0 - eps).powi(i as i32 - 1) * slack0 * opt
                - smooth;
            bound - w[1]
        })
        .fold(f64::NEG_INFINITY, f64::max)
}
