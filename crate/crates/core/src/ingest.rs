//! Graph input, per-round vertex subsampling and seeded instance generators.

use std::path::Path;

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::{LocationObjective, QuadraticObjective, RevenueObjective};
use crate::reference::quadratic_cube_minimum;
use crate::rng::{self, StreamRng};
use crate::sets::HPolytope;

/// Undirected graph with non-negative edge weights; self-loops are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphData {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    weighted: bool,
}

impl GraphData {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>, weighted: bool) -> Result<Self> {
        let mut kept = Vec::with_capacity(edges.len());
        for (i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::usage(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::usage(format!("edge ({i}, {j}) has invalid weight {w}")));
            }
            if i != j {
                kept.push((i, j, w));
            }
        }
        Ok(Self {
            n,
            edges: kept,
            weighted,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn revenue(&self, p: f64) -> Result<RevenueObjective> {
        RevenueObjective::new(self.n, &self.edges, p)
    }
}

/// Parses `i j` or `i j w` lines with 0-based ids; `#` starts a comment.
/// The vertex count is one more than the largest id.
pub fn parse_edge_list(text: &str, origin: &Path) -> Result<GraphData> {
    let err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut edges = Vec::new();
    let mut weighted = false;
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(err(line_no, format!("expected `i j` or `i j w`, found {} fields", tokens.len())));
        }
        let id = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| err(line_no, format!("bad vertex id `{t}`: {e}")))
        };
        let (i, j) = (id(tokens[0])?, id(tokens[1])?);
        let w = match tokens.get(2) {
            Some(t) => {
                weighted = true;
                let w = t
                    .parse::<f64>()
                    .map_err(|e| err(line_no, format!("bad weight `{t}`: {e}")))?;
                if !(w >= 0.0 && w.is_finite()) {
                    return Err(err(line_no, format!("weight must be finite and >= 0, got {w}")));
                }
                w
            }
            None => 1.0,
        };
        n = n.max(i + 1).max(j + 1);
        edges.push((i, j, w));
    }
    GraphData::new(n, edges, weighted)
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<GraphData> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, path)
}

/// A uniformly random `size`-subset of the vertices; keeps ids and every edge
/// with both endpoints selected.
pub fn subsample_step(graph: &GraphData, size: usize, rng: &mut StreamRng) -> Result<GraphData> {
    if size > graph.n {
        return Err(Error::usage(format!(
            "cannot sample {size} of {} vertices",
            graph.n
        )));
    }
    let mut keep = vec![false; graph.n];
    for v in index::sample(rng, graph.n, size) {
        keep[v] = true;
    }
    let edges = graph
        .edges
        .iter()
        .copied()
        .filter(|&(i, j, _)| keep[i] && keep[j])
        .collect();
    Ok(GraphData {
        n: graph.n,
        edges,
        weighted: graph.weighted,
    })
}

/// Erdős–Rényi graph with expected degree `avg_degree`. Weighted graphs draw
/// weights uniformly from `[0, 1]`.
pub fn random_graph(n: usize, avg_degree: f64, weighted: bool, seed: u64) -> Result<GraphData> {
    if n < 2 {
        return Err(Error::usage("random graph needs at least 2 vertices"));
    }
    let p = (avg_degree / (n - 1) as f64).clamp(0.0, 1.0);
    let mut r = rng::stream(seed, "graph/edges");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng::uniform(&mut r) < p {
                let w = if weighted { rng::uniform(&mut r) } else { 1.0 };
                edges.push((i, j, w));
            }
        }
    }
    GraphData::new(n, edges, weighted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadraticDistribution {
    /// `H` entries from `U[-1, 0]`, `A` entries from `U[0.01, 1.01]`.
    Uniform,
    /// `H` entries from `-Exp(1)`, `A` entries from `Exp(0.25) + 0.01`.
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticInstanceSpec {
    pub n: usize,
    pub m: usize,
    pub distribution: QuadraticDistribution,
    pub seed: u64,
}

/// Largest dimension for which the offset is computed by vertex enumeration.
pub const MAX_QUADRATIC_DIM: usize = 22;

#[derive(Debug, Clone)]
pub struct QuadraticInstance {
    pub objective: QuadraticObjective,
    pub polytope: HPolytope,
    /// `u_j = min_i b_i / A_ij`.
    pub upper: Vec<f64>,
    /// `M = -min_{x in [0,1]^n} ½ xᵀHx + hᵀx`; the offset is `M + 0.1|M|`.
    pub shift: f64,
}

/// `F(x) = ½ xᵀHx + hᵀx + c` on `{x in [0,1]^n : Ax <= 1}` with
/// `h = -0.1 Hᵀu` and `c = M + 0.1|M|`, so `F >= 0` on the whole cube.
pub fn gen_quadratic(spec: &QuadraticInstanceSpec) -> Result<QuadraticInstance> {
    let QuadraticInstanceSpec {
        n,
        m,
        distribution,
        seed,
    } = *spec;
    if n == 0 || m == 0 {
        return Err(Error::usage("quadratic instances need n >= 1 and m >= 1"));
    }
    if n > MAX_QUADRATIC_DIM {
        return Err(Error::usage(format!(
            "quadratic instances need n <= {MAX_QUADRATIC_DIM}, got {n}"
        )));
    }
    let mut rh = rng::stream(seed, "quadratic/H");
    let mut ra = rng::stream(seed, "quadratic/A");
    let mut hess = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = match distribution {
                QuadraticDistribution::Uniform => -rng::uniform(&mut rh),
                QuadraticDistribution::Exponential => -rng::exponential(&mut rh, 1.0),
            };
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    let a: Vec<Vec<f64>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| match distribution {
                    QuadraticDistribution::Uniform => 0.01 + rng::uniform(&mut ra),
                    QuadraticDistribution::Exponential => 0.01 + rng::exponential(&mut ra, 0.25),
                })
                .collect()
        })
        .collect();
    let b = vec![1.0; m];
    let upper: Vec<f64> = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| b[i] / a[i][j])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let linear: Vec<f64> = (0..n)
        .map(|j| -0.1 * (0..n).map(|i| hess[i][j] * upper[i]).sum::<f64>())
        .collect();
    let unshifted = QuadraticObjective::new(hess.clone(), linear.clone(), 0.0)?;
    let (min, _) = quadratic_cube_minimum(&unshifted)?;
    let shift = -min;
    let objective = QuadraticObjective::new(hess, linear, shift + 0.1 * shift.abs())?;
    Ok(QuadraticInstance {
        objective,
        polytope: HPolytope::new(a, b, n)?,
        upper,
        shift,
    })
}

pub fn gen_quadratic_uniform(n: usize, m: usize, seed: u64) -> Result<(QuadraticObjective, HPolytope)> {
    let inst = gen_quadratic(&QuadraticInstanceSpec {
        n,
        m,
        distribution: QuadraticDistribution::Uniform,
        seed,
    })?;
    Ok((inst.objective, inst.polytope))
}

pub fn gen_quadratic_exponential(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<(QuadraticObjective, HPolytope)> {
    let inst = gen_quadratic(&QuadraticInstanceSpec {
        n,
        m,
        distribution: QuadraticDistribution::Exponential,
        seed,
    })?;
    Ok((inst.objective, inst.polytope))
}

/// Synthetic stand-in for location summarization: `n` candidate locations
/// with random symmetric similarities and positions in the unit square.
///
/// A user at point `p` pays `d_i = |p - q_i| / (sqrt(2) n)` for location `i`,
/// which keeps every objective non-negative (`d_i <= 1/n`).
#[derive(Debug, Clone)]
pub struct LocationScenario {
    similarity: Vec<Vec<f64>>,
    positions: Vec<[f64; 2]>,
    seed: u64,
    base: LocationObjective,
}

impl LocationScenario {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("location scenario needs n >= 1"));
        }
        let mut rs = rng::stream(seed, "location/similarity");
        let mut similarity = vec![vec![1.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = rng::uniform(&mut rs);
                similarity[i][j] = v;
                similarity[j][i] = v;
            }
        }
        let mut rp = rng::stream(seed, "location/positions");
        let positions: Vec<[f64; 2]> = (0..n)
            .map(|_| [rng::uniform(&mut rp), rng::uniform(&mut rp)])
            .collect();
        let mut ru = rng::stream(seed, "location/user");
        let user = [rng::uniform(&mut ru), rng::uniform(&mut ru)];
        let distance = distances(&positions, user);
        let base = LocationObjective::new(similarity.clone(), distance)?;
        Ok(Self {
            similarity,
            positions,
            seed,
            base,
        })
    }

    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn similarity(&self) -> &[Vec<f64>] {
        &self.similarity
    }

    /// The single-user objective drawn with the scenario.
    pub fn objective(&self) -> &LocationObjective {
        &self.base
    }

    /// Round `t`'s user, drawn from its own stream.
    pub fn round_objective(&self, t: usize) -> Result<LocationObjective> {
        let mut r = rng::stream(self.seed, &format!("location/user/{t}"));
        let user = [rng::uniform(&mut r), rng::uniform(&mut r)];
        self.base.with_distance(distances(&self.positions, user))
    }
}

fn distances(positions: &[[f64; 2]], user: [f64; 2]) -> Vec<f64> {
    let scale = 1.0 / (2f64.sqrt() * positions.len() as f64);
    positions
        .iter()
        .map(|q| ((q[0] - user[0]).powi(2) + (q[1] - user[1]).powi(2)).sqrt() * scale)
        .collect()
}

pub fn gen_location_synthetic(n: usize, seed: u64) -> Result<LocationObjective> {
    Ok(LocationScenario::new(n, seed)?.base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::Objective;
    use std::path::PathBuf;

    fn parse(text: &str) -> Result<GraphData> {
        parse_edge_list(text, &PathBuf::from("mem.txt"))
    }

    #[test]
    fn parses_edge_lists() {
        let g = parse("0 1\n1 2\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), &[(0, 1, 1.0), (1, 2, 1.0)]);
        assert!(!g.is_weighted());
        let g = parse("# header\n0 1 0.5  # trailing\n\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1, 0.5)]);
        assert!(g.is_weighted());
        let g = parse("2 2\n0 1\n").unwrap();
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse("0 1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("0 1 -1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn subsampling() {
        let g = random_graph(30, 5.0, false, 1).unwrap();
        let mut r = rng::stream(2, "t");
        assert_eq!(subsample_step(&g, 30, &mut r).unwrap(), g);
        assert!(subsample_step(&g, 0, &mut r).unwrap().edges().is_empty());
        assert!(subsample_step(&g, 31, &mut r).is_err());
        let a = subsample_step(&g, 10, &mut rng::stream(9, "t")).unwrap();
        let b = subsample_step(&g, 10, &mut rng::stream(9, "t")).unwrap();
        assert_eq!(a, b);
        let used: std::collections::BTreeSet<usize> =
            a.edges().iter().flat_map(|e| [e.0, e.1]).collect();
        assert!(used.len() <= 10);
    }

    #[test]
    fn uniform_quadratic_ranges() {
        let inst = gen_quadratic(&QuadraticInstanceSpec {
            n: 6,
            m: 3,
            distribution: QuadraticDistribution::Uniform,
            seed: 4,
        })
        .unwrap();
        let h = inst.objective.hessian();
        assert!(h.iter().flatten().all(|v| (-1.0..=0.0).contains(v)));
        assert!(inst.polytope.a().iter().flatten().all(|v| (0.01..=1.01).contains(v)));
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(h[i][j], h[j][i]);
            }
        }
        assert!(inst.shift >= 0.0);
        assert!((inst.objective.offset() - 1.1 * inst.shift).abs() < 1e-12);
    }

    #[test]
    fn exponential_quadratic_signs_and_mean() {
        let (obj, poly) = gen_quadratic_exponential(20, 5, 7).unwrap();
        let entries: Vec<f64> = obj.hessian().iter().flatten().copied().collect();
        assert!(entries.iter().all(|v| *v <= 0.0));
        assert!(poly.a().iter().flatten().all(|v| *v >= 0.01));
        // Upper triangle has 210 independent draws; mean of -Exp(1) is -1.
        let mut upper = Vec::new();
        for i in 0..20 {
            for j in i..20 {
                upper.push(obj.hessian()[i][j]);
            }
        }
        let mean = upper.iter().sum::<f64>() / upper.len() as f64;
        assert!((mean + 1.0).abs() < 3.0 / (upper.len() as f64).sqrt(), "{mean}");
        let (again, _) = gen_quadratic_exponential(20, 5, 7).unwrap();
        assert_eq!(obj, again);
    }

    #[test]
    fn location_generator() {
        let f = gen_location_synthetic(6, 3).unwrap();
        let m = f.similarity();
        for i in 0..6 {
            assert_eq!(m[i][i], 1.0);
            for j in 0..6 {
                assert_eq!(m[i][j], m[j][i]);
            }
        }
        assert!(f.distance().iter().all(|d| *d >= 0.0 && *d <= 1.0 / 6.0));
        assert_eq!(f.value(&[0.3; 6]).unwrap(), gen_location_synthetic(6, 3).unwrap().value(&[0.3; 6]).unwrap());
        let s = LocationScenario::new(6, 3).unwrap();
        assert_ne!(s.round_objective(1).unwrap().distance(), s.round_objective(2).unwrap().distance());
    }
}
