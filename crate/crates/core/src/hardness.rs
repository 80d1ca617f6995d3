//! Symmetry-gap fixtures built from the directed cut of `k` disjoint arcs.
//!
//! The basic polytope `P_{h,k}` over `(a_1..a_k, b_1..b_k)` is the hull of
//! `v(i)` (with `a_j = [i = j]`, `b_j = [i != j]`) and `u` (with `a = 0`,
//! `b = h`). The scrambled region `K_{h,k,l}` is `l` independent copies of
//! `P_{h,k}`; block `j` is read through a permutation `σ_j` of `[k]`.
//!
//! Everything here uses the exact multilinear cut `F_k`, without smoothing.
//!
//! Coordinate layout of a scrambled point: `a_{i,j}` sits at `j·2k + i` and
//! `b_{i,j}` at `j·2k + k + i`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::ensure_dim;
use crate::objectives::{check_point, multilinear_cut_value, Objective};
use crate::rng;
use crate::sets::{FeasibleSet, ProductSet, VertexHull};

/// Replaces the `a` coordinates by their mean, likewise the `b` coordinates.
pub fn symmetrize(k: usize, x: &[f64]) -> Result<Vec<f64>> {
    ensure_dim(2 * k, x.len())?;
    let mean_a = x[..k].iter().sum::<f64>() / k as f64;
    let mean_b = x[k..].iter().sum::<f64>() / k as f64;
    let mut out = vec![mean_a; k];
    out.extend(std::iter::repeat(mean_b).take(k));
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct BasicInstance {
    k: usize,
    h: f64,
    hull: VertexHull,
}

impl BasicInstance {
    pub fn new(k: usize, h: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("k must be at least 1"));
        }
        if !(0.0..1.0).contains(&h) {
            return Err(Error::usage(format!("h must lie in [0, 1), got {h}")));
        }
        let mut vertices: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                let mut v = vec![0.0; 2 * k];
                for j in 0..k {
                    if i == j {
                        v[j] = 1.0;
                    } else {
                        v[k + j] = 1.0;
                    }
                }
                v
            })
            .collect();
        let mut u = vec![0.0; 2 * k];
        for b in u[k..].iter_mut() {
            *b = h;
        }
        vertices.push(u);
        Ok(Self {
            k,
            h,
            hull: VertexHull::new(vertices)?,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `P_{h,k}`; vertices `v(1)..v(k)` then `u`.
    pub fn polytope(&self) -> &VertexHull {
        &self.hull
    }

    /// `v(i)` for 1-based `i`.
    pub fn v(&self, i: usize) -> &[f64] {
        &self.hull.vertices()[i - 1]
    }

    pub fn u(&self) -> &[f64] {
        &self.hull.vertices()[self.k]
    }

    /// `F_k(x)`.
    pub fn f_value(&self, x: &[f64]) -> Result<f64> {
        multilinear_cut_value(self.k, x)
    }

    /// `G_k(x) = F_k(symmetrize(x))`.
    pub fn g_value(&self, x: &[f64]) -> Result<f64> {
        multilinear_cut_value(self.k, &symmetrize(self.k, x)?)
    }

    /// `G_k` on `P_{h,k}` at any point whose `u`-weight is `d`:
    /// `(1 - d)(d - d h + (1 - d)/k)`.
    pub fn g_of_u_weight(&self, d: f64) -> f64 {
        (1.0 - d) * (d - d * self.h + (1.0 - d) / self.k as f64)
    }

    /// `k >= 1/(1-h)`, the condition under which `min |x|_inf` over the
    /// polytope equals `h`.
    pub fn is_solvable_regime(&self) -> bool {
        self.k as f64 * (1.0 - self.h) >= 1.0 - 1e-12
    }
}

pub struct ScrambledInstance {
    basic: BasicInstance,
    l: usize,
    /// `σ_j` as arrays: `perms[j][i] = σ_j(i)`.
    perms: Vec<Vec<usize>>,
    inverse: Vec<Vec<usize>>,
    set: ProductSet,
}

impl fmt::Debug for ScrambledInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScrambledInstance")
            .field("k", &self.basic.k)
            .field("l", &self.l)
            .field("h", &self.basic.h)
            .field("perms", &self.perms)
            .finish()
    }
}

impl ScrambledInstance {
    /// Draws `σ_1..σ_l` uniformly at random from `seed`.
    pub fn new(k: usize, l: usize, h: f64, seed: u64) -> Result<Self> {
        let mut rng = rng::stream(seed, "hardness/permutations");
        let perms = (0..l).map(|_| rng::permutation(&mut rng, k)).collect();
        Self::with_permutations(k, h, perms)
    }

    pub fn with_permutations(k: usize, h: f64, perms: Vec<Vec<usize>>) -> Result<Self> {
        let basic = BasicInstance::new(k, h)?;
        let l = perms.len();
        if l == 0 {
            return Err(Error::usage("l must be at least 1"));
        }
        let mut inverse = Vec::with_capacity(l);
        for p in &perms {
            let mut inv = vec![usize::MAX; k];
            if p.len() != k {
                return Err(Error::usage("each permutation must have length k"));
            }
            for (i, &s) in p.iter().enumerate() {
                if s >= k || inv[s] != usize::MAX {
                    return Err(Error::usage(format!("{p:?} is not a permutation of 0..{k}")));
                }
                inv[s] = i;
            }
            inverse.push(inv);
        }
        let blocks: Vec<Box<dyn FeasibleSet>> = (0..l)
            .map(|_| Box::new(basic.polytope().clone()) as Box<dyn FeasibleSet>)
            .collect();
        Ok(Self {
            set: ProductSet::new(blocks)?,
            basic,
            l,
            perms,
            inverse,
        })
    }

    pub fn basic(&self) -> &BasicInstance {
        &self.basic
    }

    pub fn k(&self) -> usize {
        self.basic.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn h(&self) -> f64 {
        self.basic.h
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn dim(&self) -> usize {
        2 * self.basic.k * self.l
    }

    /// `K_{h,k,l}`.
    pub fn feasible_set(&self) -> &ProductSet {
        &self.set
    }

    pub fn index_a(&self, i: usize, j: usize) -> usize {
        j * 2 * self.basic.k + i
    }

    pub fn index_b(&self, i: usize, j: usize) -> usize {
        j * 2 * self.basic.k + self.basic.k + i
    }

    /// `x^σ_{a_i} = (1/l) Σ_j x_{a_{σ_j(i), j}}`, likewise for `b`.
    pub fn scrambled_point(&self, x: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.dim(), x.len())?;
        let k = self.basic.k;
        let mut z = vec![0.0; 2 * k];
        for (j, p) in self.perms.iter().enumerate() {
            for i in 0..k {
                z[i] += x[self.index_a(p[i], j)];
                z[k + i] += x[self.index_b(p[i], j)];
            }
        }
        for v in z.iter_mut() {
            *v /= self.l as f64;
        }
        Ok(z)
    }

    /// Block `j` is `z` permuted so that [`scrambled_point`](Self::scrambled_point)
    /// of the result is `z` again: `y_{a_{i,j}} = z_{a_{σ_j^{-1}(i)}}`.
    pub fn lift(&self, z: &[f64]) -> Result<Vec<f64>> {
        let k = self.basic.k;
        ensure_dim(2 * k, z.len())?;
        let mut y = vec![0.0; self.dim()];
        for (j, inv) in self.inverse.iter().enumerate() {
            for i in 0..k {
                y[self.index_a(i, j)] = z[inv[i]];
                y[self.index_b(i, j)] = z[k + inv[i]];
            }
        }
        Ok(y)
    }

    /// `F̄(x) = F_k(x^σ)`.
    pub fn f_bar_value(&self, x: &[f64]) -> Result<f64> {
        check_point(self.dim(), x)?;
        multilinear_cut_value(self.basic.k, &self.scrambled_point(x)?)
    }

    /// `Ḡ(x) = F_k(symmetrize(x^σ))`.
    pub fn g_bar_value(&self, x: &[f64]) -> Result<f64> {
        check_point(self.dim(), x)?;
        self.basic.g_value(&self.scrambled_point(x)?)
    }

    pub fn f_bar(&self) -> ScrambledObjective {
        self.objective(false)
    }

    pub fn g_bar(&self) -> ScrambledObjective {
        self.objective(true)
    }

    fn objective(&self, symmetric: bool) -> ScrambledObjective {
        ScrambledObjective {
            k: self.basic.k,
            l: self.l,
            perms: self.perms.clone(),
            symmetric,
        }
    }

    /// A point of `K_{h,k,l}`: per block, Dirichlet(1,..,1) weights over the
    /// vertices of `P_{h,k}`.
    pub fn random_feasible<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let hull = self.basic.polytope();
        let mut x = Vec::with_capacity(self.dim());
        for _ in 0..self.l {
            let w = rng::flat_dirichlet(rng, self.basic.k + 1);
            x.extend(hull.combine(&w).expect("weights match vertex count"));
        }
        x
    }
}

/// `F̄` or `Ḡ` of a scrambled instance as an [`Objective`] over `[0,1]^{2kl}`.
#[derive(Debug, Clone)]
pub struct ScrambledObjective {
    k: usize,
    l: usize,
    perms: Vec<Vec<usize>>,
    symmetric: bool,
}

impl ScrambledObjective {
    fn inner_point(&self, x: &[f64]) -> Vec<f64> {
        let k = self.k;
        let mut z = vec![0.0; 2 * k];
        for (j, p) in self.perms.iter().enumerate() {
            let base = j * 2 * k;
            for i in 0..k {
                z[i] += x[base + p[i]];
                z[k + i] += x[base + k + p[i]];
            }
        }
        for v in z.iter_mut() {
            *v /= self.l as f64;
        }
        if self.symmetric {
            z = symmetrize(k, &z).expect("length 2k");
        }
        z
    }
}

impl Objective for ScrambledObjective {
    fn dim(&self) -> usize {
        2 * self.k * self.l
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_point(self.dim(), x)?;
        multilinear_cut_value(self.k, &self.inner_point(x))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point(self.dim(), x)?;
        let k = self.k;
        let z = self.inner_point(x);
        // ∂F_k/∂z at the inner point.
        let mut dz = vec![0.0; 2 * k];
        for i in 0..k {
            dz[i] = 1.0 - z[k + i];
            dz[k + i] = -z[i];
        }
        if self.symmetric {
            dz = symmetrize(k, &dz).expect("length 2k");
        }
        let mut g = vec![0.0; self.dim()];
        let scale = 1.0 / self.l as f64;
        for (j, p) in self.perms.iter().enumerate() {
            let base = j * 2 * k;
            for i in 0..k {
                g[base + p[i]] = scale * dz[i];
                g[base + k + p[i]] = scale * dz[k + i];
            }
        }
        Ok(g)
    }

    /// `sqrt(2k)`, the Frobenius norm of the cut Hessian; the averaging maps
    /// only shrink it.
    fn smoothness(&self) -> Option<f64> {
        Some((2.0 * self.k as f64).sqrt())
    }
}

/// Optimum of `F̄` and of `Ḡ` over `K_{h,k,l}` and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub k: usize,
    pub l: usize,
    pub h: f64,
    pub seed: u64,
    pub max_f: f64,
    pub max_g: f64,
    pub ratio: f64,
    /// `u`-weight attaining `max_g`.
    pub argmax_d: f64,
}

impl GapReport {
    pub const CSV_HEADER: [&'static str; 7] = ["k", "l", "h", "seed", "max_f", "max_g", "ratio"];

    pub fn csv_record(&self) -> [String; 7] {
        [
            self.k.to_string(),
            self.l.to_string(),
            format!("{:.16e}", self.h),
            self.seed.to_string(),
            format!("{:.16e}", self.max_f),
            format!("{:.16e}", self.max_g),
            format!("{:.16e}", self.ratio),
        ]
    }
}

const GAP_GRID: usize = 10_000;

/// Computes the symmetry gap of the scrambled instance drawn from `seed`.
///
/// `max F̄ = 1`, attained by the lifted `v(1)` (no point of `P_{h,k}` cuts
/// more than one arc in expectation). `Ḡ` on the polytope depends only on the
/// `u`-weight `d`, so `max Ḡ` is a 1-D maximization, done on a `1e-4` grid
/// plus the stationary point. Both maxima are evaluated through the lifted
/// points as a consistency check.
pub fn gap_report(k: usize, l: usize, h: f64, seed: u64) -> Result<GapReport> {
    let inst = ScrambledInstance::new(k, l, h, seed)?;
    let basic = inst.basic();
    if !basic.is_solvable_regime() {
        return Err(Error::usage(format!(
            "need k >= 1/(1-h); got k = {k}, h = {h}"
        )));
    }
    let max_f = inst.f_bar_value(&inst.lift(basic.v(1))?)?;

    let mut candidates: Vec<f64> = (0..=GAP_GRID).map(|i| i as f64 / GAP_GRID as f64).collect();
    let alpha = 1.0 - h - 1.0 / k as f64;
    if alpha > 0.0 {
        let stationary = (alpha - 1.0 / k as f64) / (2.0 * alpha);
        candidates.push(stationary.clamp(0.0, 1.0));
    }
    let (argmax_d, _) = candidates
        .iter()
        .map(|&d| (d, basic.g_of_u_weight(d)))
        .fold((0.0, f64::NEG_INFINITY), |best, c| if c.1 > best.1 { c } else { best });

    // Realize the maximizer as an actual point of K and evaluate Ḡ there.
    let mut weights = vec![(1.0 - argmax_d) / k as f64; k];
    weights.push(argmax_d);
    let z = basic.polytope().combine(&weights)?;
    let max_g = inst.g_bar_value(&inst.lift(&z)?)?;
    Ok(GapReport {
        k,
        l,
        h,
        seed,
        max_f,
        max_g,
        ratio: max_g / max_f,
        argmax_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::gradient_deviation;

    #[test]
    fn symmetrize_examples() {
        let x = [1.0, 0.0, 0.0, 1.0];
        assert_eq!(symmetrize(2, &x).unwrap(), vec![0.5; 4]);
        let s = [0.3, 0.3, 0.8, 0.8];
        assert_eq!(symmetrize(2, &s).unwrap(), s.to_vec());
        let once = symmetrize(3, &[0.1, 0.5, 0.2, 0.9, 0.4, 0.6]).unwrap();
        assert_eq!(symmetrize(3, &once).unwrap(), once);
    }

    #[test]
    fn basic_vertices() {
        let b = BasicInstance::new(3, 0.4).unwrap();
        assert_eq!(b.v(2), &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
        assert_eq!(b.u(), &[0.0, 0.0, 0.0, 0.4, 0.4, 0.4]);
        assert_eq!(b.f_value(b.v(1)).unwrap(), 1.0);
        assert!(BasicInstance::new(0, 0.0).is_err());
        assert!(BasicInstance::new(2, 1.0).is_err());
    }

    #[test]
    fn g_matches_u_weight_formula() {
        let b = BasicInstance::new(4, 0.3).unwrap();
        let w = [0.1, 0.2, 0.05, 0.25, 0.4];
        let x = b.polytope().combine(&w).unwrap();
        assert!((b.g_value(&x).unwrap() - b.g_of_u_weight(0.4)).abs() < 1e-12);
    }

    #[test]
    fn identity_scrambling_is_trivial() {
        let inst = ScrambledInstance::with_permutations(3, 0.0, vec![vec![0, 1, 2]]).unwrap();
        let x = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
        assert_eq!(inst.scrambled_point(&x).unwrap(), x.to_vec());
    }

    #[test]
    fn constant_point_scrambles_to_constant() {
        let inst = ScrambledInstance::new(4, 3, 0.2, 11).unwrap();
        let z = inst.scrambled_point(&vec![0.37; inst.dim()]).unwrap();
        assert!(z.iter().all(|v| (v - 0.37).abs() < 1e-15));
    }

    #[test]
    fn lift_inverts_scrambling() {
        let inst = ScrambledInstance::new(5, 4, 0.2, 3).unwrap();
        let z = [0.1, 0.9, 0.3, 0.4, 0.5, 0.6, 0.7, 0.2, 0.0, 1.0];
        let back = inst.scrambled_point(&inst.lift(&z).unwrap()).unwrap();
        for (a, b) in back.iter().zip(&z) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn lifted_special_points() {
        let k = 5;
        let inst = ScrambledInstance::new(k, 3, 0.0, 8).unwrap();
        let basic = inst.basic();
        let v1 = inst.lift(basic.v(1)).unwrap();
        assert_eq!(inst.f_bar_value(&v1).unwrap(), 1.0);
        let mut w = vec![1.0 / k as f64; k];
        w.push(0.0);
        let y = inst.lift(&basic.polytope().combine(&w).unwrap()).unwrap();
        assert!((inst.f_bar_value(&y).unwrap() - 0.2).abs() < 1e-12);
        assert!((inst.g_bar_value(&y).unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn scrambled_gradients_match_differences() {
        let inst = ScrambledInstance::new(3, 2, 0.5, 4).unwrap();
        let mut r = rng::stream(1, "test");
        let x: Vec<f64> = (0..inst.dim()).map(|_| 0.1 + 0.8 * rng::uniform(&mut r)).collect();
        assert!(gradient_deviation(&inst.f_bar(), &x, 1e-5) < 1e-7);
        assert!(gradient_deviation(&inst.g_bar(), &x, 1e-5) < 1e-7);
        assert!((inst.f_bar().value(&x).unwrap() - inst.f_bar_value(&x).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn gap_examples() {
        let r = gap_report(100, 2, 0.0, 1).unwrap();
        assert!((r.max_f - 1.0).abs() < 1e-12);
        assert!(r.ratio <= 0.26 && r.ratio >= 0.24, "{r:?}");
        let r = gap_report(100, 2, 0.5, 1).unwrap();
        assert!(r.ratio <= 0.135 && r.ratio >= 0.12, "{r:?}");
        // h = 0, k = 2: (1-d)(d + (1-d)/2) = (1 - d^2)/2, maximized at d = 0.
        let r = gap_report(2, 1, 0.0, 1).unwrap();
        assert!((r.max_g - 0.5).abs() < 1e-12 && r.argmax_d == 0.0);
        assert!(matches!(gap_report(1, 1, 0.5, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn random_points_are_feasible() {
        let inst = ScrambledInstance::new(3, 2, 0.5, 2).unwrap();
        let mut r = rng::stream(5, "test");
        for _ in 0..20 {
            let x = inst.random_feasible(&mut r);
            assert!(inst.feasible_set().contains(&x, 1e-7).unwrap());
        }
    }
}
