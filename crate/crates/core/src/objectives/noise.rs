use crate::error::Result;
use crate::objectives::Objective;
use crate::rng::{self, StreamRng};

/// Zero-mean additive gradient noise, uniform on `[-σ√3, σ√3]` per coordinate
/// (standard deviation `σ`).
///
/// Holds mutable RNG state: give each thread its own instance.
#[derive(Debug, Clone)]
pub struct GradientNoise {
    sigma: f64,
    rng: StreamRng,
}

impl GradientNoise {
    pub fn new(sigma: f64, seed: u64) -> Self {
        assert!(sigma >= 0.0 && sigma.is_finite(), "sigma must be >= 0");
        Self {
            sigma,
            rng: rng::stream(seed, "gradient-noise"),
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Half-width of the support, `σ√3`.
    pub fn half_width(&self) -> f64 {
        self.sigma * 3f64.sqrt()
    }

    /// Adds noise to `grad` in place. With `σ = 0` the vector is untouched and
    /// no randomness is consumed.
    pub fn perturb(&mut self, grad: &mut [f64]) {
        if self.sigma == 0.0 {
            return;
        }
        let w = self.half_width();
        for g in grad.iter_mut() {
            *g += w * (2.0 * rng::uniform(&mut self.rng) - 1.0);
        }
    }
}

/// Unbiased stochastic gradient oracle around an exact objective.
#[derive(Debug, Clone)]
pub struct NoisyGradient<O> {
    inner: O,
    noise: GradientNoise,
}

impl<O: Objective> NoisyGradient<O> {
    pub fn new(inner: O, sigma: f64, seed: u64) -> Self {
        Self {
            inner,
            noise: GradientNoise::new(sigma, seed),
        }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn stochastic_gradient(&mut self, x: &[f64]) -> Result<Vec<f64>> {
        let mut g = self.inner.gradient(x)?;
        self.noise.perturb(&mut g);
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::QuadraticObjective;

    fn quad() -> QuadraticObjective {
        QuadraticObjective::new(vec![vec![-1.0, -0.3], vec![-0.3, -0.5]], vec![0.8, 0.4], 1.0)
            .unwrap()
    }

    #[test]
    fn zero_sigma_is_exact() {
        let mut ng = NoisyGradient::new(quad(), 0.0, 1);
        let x = [0.2, 0.7];
        assert_eq!(ng.stochastic_gradient(&x).unwrap(), quad().gradient(&x).unwrap());
    }

    #[test]
    fn mean_is_unbiased() {
        let mut ng = NoisyGradient::new(quad(), 0.1, 5);
        let x = [0.4, 0.1];
        let exact = quad().gradient(&x).unwrap();
        let n = 10_000;
        let mut mean = vec![0.0; 2];
        for _ in 0..n {
            let g = ng.stochastic_gradient(&x).unwrap();
            for (m, v) in mean.iter_mut().zip(g) {
                *m += v / n as f64;
            }
        }
        for (m, e) in mean.iter().zip(&exact) {
            // 3 sigma / sqrt(N) = 0.003, well inside 0.01
            assert!((m - e).abs() < 0.01, "{m} vs {e}");
        }
    }

    #[test]
    fn seeded_reproducibly() {
        let x = [0.4, 0.1];
        let a = NoisyGradient::new(quad(), 0.1, 9).stochastic_gradient(&x).unwrap();
        let b = NoisyGradient::new(quad(), 0.1, 9).stochastic_gradient(&x).unwrap();
        assert_eq!(a, b);
    }
}
