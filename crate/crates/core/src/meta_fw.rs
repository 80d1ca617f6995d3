//! Online Meta-Frank-Wolfe for non-monotone objectives.
//!
//! Each round runs `L` Frank-Wolfe steps of size `eps` from a minimum
//! infinity-norm point, taking the `i`-th direction from the `i`-th online
//! linear optimizer. After the round's point is played and `F_t` revealed,
//! optimizer `i` is fed a gradient estimate at the `(i-1)`-th inner iterate.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::nmfw::default_steps;
use crate::numeric::{convex_step, inf_norm, norm2};
use crate::objectives::{GradientNoise, Objective};
use crate::rftl::{LearningRate, Rftl};
use crate::sets::FeasibleSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsSchedule {
    /// The same `eps` and `L` every round.
    Fixed,
    /// Experimental: `eps_t = 1/sqrt(t)` and `L_t = min(floor(ln 2 / eps_t), max_steps)`,
    /// so the horizon need not be known in advance. No guarantee is claimed.
    Dynamic { max_steps: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetaFwConfig {
    /// `L`, the number of inner steps and of online linear optimizers.
    pub steps: usize,
    pub eps: f64,
    /// `T`, the number of rounds.
    pub horizon: usize,
    /// Bound on gradient-estimate norms used to tune the optimizers. Without
    /// it they adapt to the largest norm seen.
    pub gradient_bound: Option<f64>,
    pub schedule: EpsSchedule,
}

impl MetaFwConfig {
    pub fn new(steps: usize, eps: f64, horizon: usize) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::usage(format!("eps must lie in (0, 1), got {eps}")));
        }
        if steps == 0 || horizon == 0 {
            return Err(Error::usage("steps and horizon must be at least 1"));
        }
        Ok(Self {
            steps,
            eps,
            horizon,
            gradient_bound: None,
            schedule: EpsSchedule::Fixed,
        })
    }

    /// `eps = 1/sqrt(T)`, `L = floor(ln 2 / eps)`.
    pub fn for_horizon(horizon: usize) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::usage("horizon must be at least 2 for eps = 1/sqrt(T) < 1"));
        }
        let eps = 1.0 / (horizon as f64).sqrt();
        Self::new(default_steps(eps), eps, horizon)
    }

    pub fn with_gradient_bound(mut self, bound: f64) -> Self {
        self.gradient_bound = Some(bound);
        self
    }

    pub fn dynamic(horizon: usize, max_steps: usize) -> Result<Self> {
        let mut cfg = Self::new(max_steps, 0.5, horizon)?;
        cfg.schedule = EpsSchedule::Dynamic { max_steps };
        Ok(cfg)
    }

    /// `(eps_t, L_t)` for 1-based round `t`.
    pub fn round_parameters(&self, t: usize) -> (f64, usize) {
        match self.schedule {
            EpsSchedule::Fixed => (self.eps, self.steps),
            EpsSchedule::Dynamic { max_steps } => {
                // eps_1 = 1 would jump straight to the linear maximizer.
                let eps = (1.0 / (t.max(1) as f64).sqrt()).min(0.5);
                (eps, default_steps(eps).min(max_steps))
            }
        }
    }
}

/// The algorithm as an explicit stepper: [`propose`](Self::propose) the
/// round's point, then [`observe`](Self::observe) gradient estimates.
pub struct MetaFw<'k, K: FeasibleSet + ?Sized> {
    cfg: MetaFwConfig,
    start: Vec<f64>,
    learners: Vec<Rftl<&'k K>>,
    round: usize,
    /// `y(0,t) ..= y(L_t,t)` between propose and observe.
    inner: Option<Vec<Vec<f64>>>,
    round_eps: f64,
}

impl<'k, K: FeasibleSet + ?Sized> MetaFw<'k, K> {
    pub fn new(set: &'k K, cfg: MetaFwConfig) -> Result<Self> {
        let rate = match (cfg.schedule, cfg.gradient_bound) {
            (EpsSchedule::Fixed, Some(g)) => LearningRate::Tuned {
                gradient_bound: g,
                horizon: cfg.horizon,
            },
            _ => LearningRate::Adaptive,
        };
        let learners = (0..cfg.steps)
            .map(|_| Rftl::new(set, rate))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cfg,
            start: set.min_inf_norm_point()?,
            learners,
            round: 0,
            inner: None,
            round_eps: cfg.eps,
        })
    }

    pub fn config(&self) -> &MetaFwConfig {
        &self.cfg
    }

    /// Rounds completed so far.
    pub fn rounds(&self) -> usize {
        self.round
    }

    /// Inner iterates of the round in progress, if any.
    pub fn inner_iterates(&self) -> Option<&[Vec<f64>]> {
        self.inner.as_deref()
    }

    /// Step size of the round in progress (or the last one).
    pub fn round_eps(&self) -> f64 {
        self.round_eps
    }

    /// Builds `y(L,t)` from the optimizers' current picks.
    pub fn propose(&mut self) -> Result<Vec<f64>> {
        if self.inner.is_some() {
            return Err(Error::Protocol(
                "propose called twice without observing feedback".into(),
            ));
        }
        let (eps, steps) = self.cfg.round_parameters(self.round + 1);
        self.round_eps = eps;
        let mut y = self.start.clone();
        let mut inner = Vec::with_capacity(steps + 1);
        inner.push(y.clone());
        for learner in self.learners.iter_mut().take(steps) {
            let s = learner.pick()?;
            convex_step(&mut y, &s, eps);
            inner.push(y.clone());
        }
        self.inner = Some(inner);
        Ok(y)
    }

    /// Feeds optimizer `i` the estimate `grad(i, y(i-1,t))` for `i = 1..=L_t`.
    /// Returns the estimates' Euclidean norms.
    pub fn observe<G>(&mut self, mut grad: G) -> Result<Vec<f64>>
    where
        G: FnMut(usize, &[f64]) -> Result<Vec<f64>>,
    {
        let inner = self
            .inner
            .take()
            .ok_or_else(|| Error::Protocol("observe called before propose".into()))?;
        let steps = inner.len() - 1;
        let mut norms = Vec::with_capacity(steps);
        for (i, learner) in self.learners.iter_mut().enumerate().take(steps) {
            let g = grad(i + 1, &inner[i])?;
            norms.push(norm2(&g));
            learner.feed(&g)?;
        }
        self.round += 1;
        Ok(norms)
    }
}

/// Source of the round objectives `F_1, F_2, ...`.
pub trait ObjectiveStream {
    fn dim(&self) -> usize;

    /// `F_t` for 1-based `t`. Called once per round, after the round's point
    /// has been played.
    fn objective(&mut self, t: usize) -> Result<Arc<dyn Objective>>;
}

/// The same objective every round.
pub struct ConstantStream(pub Arc<dyn Objective>);

impl ObjectiveStream for ConstantStream {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn objective(&mut self, _t: usize) -> Result<Arc<dyn Objective>> {
        Ok(self.0.clone())
    }
}

/// Cycles through a fixed list: `F_t = list[(t-1) mod len]`.
pub struct CyclicStream(pub Vec<Arc<dyn Objective>>);

impl ObjectiveStream for CyclicStream {
    fn dim(&self) -> usize {
        self.0[0].dim()
    }
    fn objective(&mut self, t: usize) -> Result<Arc<dyn Objective>> {
        if self.0.is_empty() {
            return Err(Error::usage("cyclic stream is empty"));
        }
        Ok(self.0[(t - 1) % self.0.len()].clone())
    }
}

/// Objectives produced on demand by a closure of the round number.
pub struct FnStream<F> {
    dim: usize,
    make: F,
}

impl<F> FnStream<F>
where
    F: FnMut(usize) -> Result<Arc<dyn Objective>>,
{
    pub fn new(dim: usize, make: F) -> Self {
        Self { dim, make }
    }
}

impl<F> ObjectiveStream for FnStream<F>
where
    F: FnMut(usize) -> Result<Arc<dyn Objective>>,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn objective(&mut self, t: usize) -> Result<Arc<dyn Objective>> {
        (self.make)(t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProtocolEvent {
    Play { round: usize, point: Vec<f64> },
    Gradient { round: usize, point: Vec<f64> },
    EndRound { round: usize },
}

/// Play-before-reveal wrapper around a stream. `F_t` is fetched only inside
/// [`play`](Self::play); gradient and value queries before that fail.
pub struct OnlineProtocol<S> {
    stream: S,
    round: usize,
    current: Option<Arc<dyn Objective>>,
    noise: Option<GradientNoise>,
    events: Option<Vec<ProtocolEvent>>,
}

impl<S: ObjectiveStream> OnlineProtocol<S> {
    pub fn new(stream: S) -> Self {
        Self {
            stream,
            round: 0,
            current: None,
            noise: None,
            events: None,
        }
    }

    /// Adds zero-mean noise to every gradient answer.
    pub fn with_noise(mut self, noise: GradientNoise) -> Self {
        self.noise = Some(noise);
        self
    }

    /// Keeps a log of plays, queries and round ends.
    pub fn with_event_log(mut self) -> Self {
        self.events = Some(Vec::new());
        self
    }

    pub fn dim(&self) -> usize {
        self.stream.dim()
    }

    pub fn events(&self) -> &[ProtocolEvent] {
        self.events.as_deref().unwrap_or(&[])
    }

    /// Commits `y` as round `t`'s decision, reveals `F_t` and returns `F_t(y)`.
    pub fn play(&mut self, y: &[f64]) -> Result<f64> {
        if self.current.is_some() {
            return Err(Error::Protocol(format!(
                "round {} already played",
                self.round
            )));
        }
        self.round += 1;
        let f = self.stream.objective(self.round)?;
        let value = f.value(y)?;
        self.current = Some(f);
        if let Some(log) = &mut self.events {
            log.push(ProtocolEvent::Play {
                round: self.round,
                point: y.to_vec(),
            });
        }
        Ok(value)
    }

    fn revealed(&self) -> Result<&Arc<dyn Objective>> {
        self.current
            .as_ref()
            .ok_or_else(|| Error::Protocol("objective queried before the round was played".into()))
    }

    /// Unbiased estimate of `∇F_t(x)`.
    pub fn gradient(&mut self, x: &[f64]) -> Result<Vec<f64>> {
        let mut g = self.revealed()?.gradient(x)?;
        if let Some(noise) = &mut self.noise {
            noise.perturb(&mut g);
        }
        if let Some(log) = &mut self.events {
            log.push(ProtocolEvent::Gradient {
                round: self.round,
                point: x.to_vec(),
            });
        }
        Ok(g)
    }

    /// Exact `F_t(x)` for the revealed round.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.revealed()?.value(x)
    }

    pub fn end_round(&mut self) -> Result<()> {
        if self.current.take().is_none() {
            return Err(Error::Protocol("end_round before play".into()));
        }
        if let Some(log) = &mut self.events {
            log.push(ProtocolEvent::EndRound { round: self.round });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct OnlineRunRecord {
    pub played: Vec<Vec<f64>>,
    /// `F_t(y(t))`.
    pub values: Vec<f64>,
    /// Running sum of `values`.
    pub cumulative: Vec<f64>,
    /// Largest gradient-estimate norm per round.
    pub gradient_norms: Vec<f64>,
    /// `|y(i,t)|_inf` for `i = 0..=L_t`, per round.
    pub inner_inf_norms: Vec<Vec<f64>>,
    /// Step size used in each round.
    pub round_eps: Vec<f64>,
    /// `Σ_t F_t(x*)` for a best fixed `x*`, when the caller supplies one.
    pub comparator: Option<f64>,
}

impl OnlineRunRecord {
    pub fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// `G`, the largest gradient-estimate norm over the run.
    pub fn max_gradient_norm(&self) -> f64 {
        self.gradient_norms.iter().copied().fold(0.0, f64::max)
    }

    /// Largest violation over all rounds of
    /// `1 - |y(i,t)|_inf >= (1-eps)^i (1 - |y(0,t)|_inf)`.
    pub fn norm_decay_violation(&self) -> f64 {
        self.inner_inf_norms
            .iter()
            .zip(&self.round_eps)
            .flat_map(|(norms, &eps)| {
                let slack0 = 1.0 - norms[0];
                norms
                    .iter()
                    .enumerate()
                    .map(move |(i, n)| (1.0 - eps).powi(i as i32) * slack0 - (1.0 - n))
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Drives `T` rounds of Meta-Frank-Wolfe through `protocol`.
pub fn run_online<S, K>(
    protocol: &mut OnlineProtocol<S>,
    set: &K,
    cfg: &MetaFwConfig,
) -> Result<OnlineRunRecord>
where
    S: ObjectiveStream,
    K: FeasibleSet + ?Sized,
{
    if protocol.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: protocol.dim(),
        });
    }
    let mut alg = MetaFw::new(set, *cfg)?;
    let mut record = OnlineRunRecord::default();
    let mut total = 0.0;
    for _ in 0..cfg.horizon {
        let y = alg.propose()?;
        let inner_norms = alg
            .inner_iterates()
            .map(|it| it.iter().map(|p| inf_norm(p)).collect())
            .unwrap_or_default();
        let value = protocol.play(&y)?;
        let norms = alg.observe(|_, x| protocol.gradient(x))?;
        protocol.end_round()?;
        total += value;
        record.played.push(y);
        record.values.push(value);
        record.cumulative.push(total);
        record.gradient_norms.push(norms.iter().copied().fold(0.0, f64::max));
        record.inner_inf_norms.push(inner_norms);
        record.round_eps.push(alg.round_eps());
    }
    Ok(record)
}

/// Noise parameters for [`meta_fw`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

/// Runs Meta-Frank-Wolfe on `stream` over `set`, optionally with noisy
/// gradients.
pub fn meta_fw<S, K>(
    stream: S,
    set: &K,
    cfg: &MetaFwConfig,
    noise: Option<NoiseSpec>,
) -> Result<OnlineRunRecord>
where
    S: ObjectiveStream,
    K: FeasibleSet + ?Sized,
{
    let mut protocol = OnlineProtocol::new(stream);
    if let Some(spec) = noise {
        protocol = protocol.with_noise(GradientNoise::new(spec.sigma, spec.seed));
    }
    run_online(&mut protocol, set, cfg)
}

/// `ratio · comparator - Σ_t F_t(y(t))`; positive means regret incurred.
pub fn approximation_regret(record: &OnlineRunRecord, comparator: f64, ratio: f64) -> f64 {
    ratio * comparator - record.total()
}

/// `(1/4 - 3 eps)(1 - m) · comparator - (G + beta D) D sqrt(T)`.
pub fn online_guarantee(
    eps: f64,
    m: f64,
    comparator: f64,
    gradient_bound: f64,
    beta: f64,
    diameter: f64,
    horizon: usize,
) -> f64 {
    (0.25 - 3.0 * eps) * (1.0 - m) * comparator
        - (gradient_bound + beta * diameter) * diameter * (horizon as f64).sqrt()
}
