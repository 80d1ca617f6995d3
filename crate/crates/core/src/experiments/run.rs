use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hardness::{gap_report, GapReport};
use crate::ingest::{self, GraphData, LocationScenario, QuadraticInstanceSpec};
use crate::meta_fw::{meta_fw, FnStream, MetaFwConfig, NoiseSpec, OnlineRunRecord};
use crate::nmfw::{default_steps, nmfw, NmfwConfig, RunRecord};
use crate::objectives::Objective;
use crate::reference::{quadratic_max_exact, quadratic_max_lower_bound};
use crate::rng;
use crate::sets::SumBoxPolytope;

use super::config::*;

/// Largest `n` for which the sweep uses the exact optimum as reference.
pub const EXACT_REFERENCE_DIM: usize = 4;

/// A header and rows of already formatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Column `name` parsed as floats.
    pub fn floats(&self, name: &str) -> Result<Vec<f64>> {
        let c = self
            .column(name)
            .ok_or_else(|| Error::usage(format!("no column {name:?}")))?;
        self.rows
            .iter()
            .map(|r| {
                r[c].parse::<f64>()
                    .map_err(|e| Error::usage(format!("column {name:?}: {e}")))
            })
            .collect()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Runs the experiment and returns its table without touching the disk.
pub fn run(cfg: &ExperimentConfig) -> Result<Table> {
    cfg.validate()?;
    match cfg {
        ExperimentConfig::RevenueOnline(c) => revenue_online(c),
        ExperimentConfig::RevenueOffline(c) => revenue_offline(c),
        ExperimentConfig::LocationOnline(c) => location_online(c),
        ExperimentConfig::QuadraticOffline(c) => quadratic_offline(c),
        ExperimentConfig::QuadraticSweep(c) => quadratic_sweep(c),
        ExperimentConfig::HardnessGap(c) => hardness_gap(c),
    }
}

/// Runs the experiment and writes its CSV to `output`, or to the configured
/// path when `output` is `None`. Returns the path written.
pub fn run_with_output(cfg: &ExperimentConfig, output: Option<&Path>) -> Result<PathBuf> {
    let table = run(cfg)?;
    let path = output.map(Path::to_path_buf).unwrap_or_else(|| cfg.output_path());
    table.write_csv(&path)?;
    Ok(path)
}

fn load_graph(spec: &GraphSpec, seed: u64) -> Result<GraphData> {
    match &spec.file {
        Some(path) => ingest::load_edge_list(path),
        None => ingest::random_graph(spec.vertices, spec.avg_degree, spec.weighted, seed),
    }
}

fn online_config(eps: Option<f64>, steps: Option<usize>, horizon: usize) -> Result<MetaFwConfig> {
    let eps = eps.unwrap_or(1.0 / (horizon as f64).sqrt());
    MetaFwConfig::new(steps.unwrap_or_else(|| default_steps(eps)), eps, horizon)
}

fn online_table(record: &OnlineRunRecord) -> Table {
    let mut t = Table::new(&["t", "value", "cumulative"]);
    for (i, (v, c)) in record.values.iter().zip(&record.cumulative).enumerate() {
        t.rows.push(vec![(i + 1).to_string(), fmt_f(*v), fmt_f(*c)]);
    }
    t
}

fn offline_table(record: &RunRecord) -> Table {
    let mut t = Table::new(&["i", "value", "best"]);
    let mut best = f64::NEG_INFINITY;
    for (i, v) in record.values.iter().enumerate() {
        best = best.max(*v);
        t.rows.push(vec![i.to_string(), fmt_f(*v), fmt_f(best)]);
    }
    t
}

fn noise(sigma: f64, seed: u64) -> Option<NoiseSpec> {
    (sigma > 0.0).then(|| NoiseSpec {
        sigma,
        seed: rng::derive_seed(seed, "noise"),
    })
}

fn revenue_online(c: &RevenueOnlineConfig) -> Result<Table> {
    let graph = load_graph(&c.graph, c.seed)?;
    let n = graph.num_vertices();
    if c.subsample > n {
        return Err(Error::config("subsample", format!("exceeds the {n} graph vertices")));
    }
    if c.hi > n as f64 {
        return Err(Error::config("hi", "must not exceed the number of vertices"));
    }
    let set = SumBoxPolytope::new(n, c.lo, c.hi)?;
    let cfg = online_config(c.eps, c.steps, c.horizon)?;
    let stream = FnStream::new(n, |t| {
        let mut r = rng::stream(c.seed, &format!("revenue/subsample/{t}"));
        let sub = ingest::subsample_step(&graph, c.subsample, &mut r)?;
        Ok(Arc::new(sub.revenue(c.p)?) as Arc<dyn Objective>)
    });
    let record = meta_fw(stream, &set, &cfg, noise(c.sigma, c.seed))?;
    Ok(online_table(&record))
}

fn revenue_offline(c: &RevenueOfflineConfig) -> Result<Table> {
    let graph = load_graph(&c.graph, c.seed)?;
    let n = graph.num_vertices();
    if c.hi > n as f64 {
        return Err(Error::config("hi", "must not exceed the number of vertices"));
    }
    let set = SumBoxPolytope::new(n, c.lo, c.hi)?;
    let obj = graph.revenue(c.p)?;
    let cfg = NmfwConfig::new(c.iterations.unwrap_or_else(|| default_steps(c.eps)), c.eps)?;
    Ok(offline_table(&nmfw(&obj, &set, &cfg)?))
}

fn location_online(c: &LocationOnlineConfig) -> Result<Table> {
    let scenario = LocationScenario::new(c.n, c.seed)?;
    let set = SumBoxPolytope::new(c.n, c.lo, c.hi)?;
    let cfg = online_config(c.eps, c.steps, c.horizon)?;
    let stream = FnStream::new(c.n, |t| {
        Ok(Arc::new(scenario.round_objective(t)?) as Arc<dyn Objective>)
    });
    let record = meta_fw(stream, &set, &cfg, noise(c.sigma, c.seed))?;
    Ok(online_table(&record))
}

fn quadratic_offline(c: &QuadraticOfflineConfig) -> Result<Table> {
    let inst = ingest::gen_quadratic(&QuadraticInstanceSpec {
        n: c.n,
        m: c.m,
        distribution: c.distribution,
        seed: c.seed,
    })?;
    let cfg = NmfwConfig::new(c.iterations.unwrap_or_else(|| default_steps(c.eps)), c.eps)?;
    Ok(offline_table(&nmfw(&inst.objective, &inst.polytope, &cfg)?))
}

fn quadratic_sweep(c: &QuadraticSweepConfig) -> Result<Table> {
    let mut t = Table::new(&["n", "m", "rep", "seed", "value", "reference", "ratio"]);
    let cfg = NmfwConfig::new(c.iterations.unwrap_or_else(|| default_steps(c.eps)), c.eps)?;
    for &n in &c.n {
        let m = ((c.m_ratio * n as f64).floor() as usize).max(1);
        for rep in 0..c.reps {
            let seed = rng::derive_seed(c.seed, &format!("sweep/{n}/{rep}"));
            let inst = ingest::gen_quadratic(&QuadraticInstanceSpec {
                n,
                m,
                distribution: c.distribution,
                seed,
            })?;
            let value = nmfw(&inst.objective, &inst.polytope, &cfg)?.best_value();
            let reference = if n <= EXACT_REFERENCE_DIM {
                quadratic_max_exact(&inst.objective, &inst.polytope)?.0
            } else {
                quadratic_max_lower_bound(&inst.objective, &inst.polytope, c.reference_starts, seed)?
                    .0
                    .max(value)
            };
            t.rows.push(vec![
                n.to_string(),
                m.to_string(),
                rep.to_string(),
                seed.to_string(),
                fmt_f(value),
                fmt_f(reference),
                fmt_f(value / reference),
            ]);
        }
    }
    Ok(t)
}

fn hardness_gap(c: &HardnessGapConfig) -> Result<Table> {
    let mut t = Table::new(&GapReport::CSV_HEADER);
    for &k in &c.k {
        for &h in &c.h {
            let report = gap_report(k, c.l, h, c.seed)?;
            t.rows.push(report.csv_record().to_vec());
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> ExperimentConfig {
        ExperimentConfig::from_json_str(text, &[]).unwrap()
    }

    #[test]
    fn offline_rows_and_running_best() {
        let cfg = parse(
            r#"{"kind": "quadratic-offline", "distribution": "exponential", "n": 4, "m": 2, "iterations": 30}"#,
        );
        let t = run(&cfg).unwrap();
        assert_eq!(t.rows.len(), 31);
        let best = t.floats("best").unwrap();
        assert!(best.windows(2).all(|w| w[1] >= w[0]));
        assert!(t.floats("value").unwrap().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn online_rows_accumulate() {
        let cfg = parse(
            r#"{"kind": "location-online", "n": 6, "horizon": 9, "lo": 1, "hi": 2, "sigma": 0.01}"#,
        );
        let t = run(&cfg).unwrap();
        assert_eq!(t.rows.len(), 9);
        let v = t.floats("value").unwrap();
        let c = t.floats("cumulative").unwrap();
        assert!((v.iter().sum::<f64>() - c[8]).abs() < 1e-9);
    }

    #[test]
    fn revenue_runs_are_deterministic() {
        let cfg = parse(
            r#"{"kind": "revenue-online", "graph": {"vertices": 30, "avg_degree": 4}, "horizon": 5, "eps": 0.2, "subsample": 20, "lo": 0.1, "hi": 1, "sigma": 0.1, "seed": 9}"#,
        );
        assert_eq!(run(&cfg).unwrap(), run(&cfg).unwrap());
    }

    #[test]
    fn sweep_ratios_at_most_one_for_exact_reference() {
        let cfg = parse(
            r#"{"kind": "quadratic-sweep", "distribution": "uniform", "n": [2, 3], "m_ratio": 0.5, "reps": 2}"#,
        );
        let t = run(&cfg).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.floats("ratio").unwrap().iter().all(|r| *r <= 1.0 + 1e-9 && *r > 0.0));
    }

    #[test]
    fn subsample_larger_than_graph_is_a_config_error() {
        let cfg = parse(
            r#"{"kind": "revenue-online", "graph": {"vertices": 10}, "horizon": 3, "subsample": 11, "lo": 0.1, "hi": 1}"#,
        );
        assert!(matches!(run(&cfg), Err(Error::Config { .. })));
    }
}
