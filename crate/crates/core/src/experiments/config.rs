use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ingest::QuadraticDistribution;

/// One experiment, selected by its `kind` field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentConfig {
    RevenueOnline(RevenueOnlineConfig),
    RevenueOffline(RevenueOfflineConfig),
    LocationOnline(LocationOnlineConfig),
    QuadraticOffline(QuadraticOfflineConfig),
    QuadraticSweep(QuadraticSweepConfig),
    HardnessGap(HardnessGapConfig),
}

/// Graph input: an edge-list file, or an Erdős–Rényi graph when `file` is
/// absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    #[serde(default)]
    pub file: Option<PathBuf>,
    #[serde(default = "default_vertices")]
    pub vertices: usize,
    #[serde(default = "default_degree")]
    pub avg_degree: f64,
    #[serde(default)]
    pub weighted: bool,
}

impl Default for GraphSpec {
    fn default() -> Self {
        Self {
            file: None,
            vertices: default_vertices(),
            avg_degree: default_degree(),
            weighted: false,
        }
    }
}

fn default_vertices() -> usize {
    200
}

fn default_degree() -> f64 {
    10.0
}

fn default_p() -> f64 {
    1e-4
}

fn default_eps() -> f64 {
    0.03
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RevenueOnlineConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub long_running: bool,
    #[serde(default)]
    pub graph: GraphSpec,
    #[serde(default = "default_p")]
    pub p: f64,
    pub horizon: usize,
    /// Defaults to `1/sqrt(horizon)`.
    #[serde(default)]
    pub eps: Option<f64>,
    /// Defaults to `floor(ln 2 / eps)`.
    #[serde(default)]
    pub steps: Option<usize>,
    /// Vertices sampled per round.
    pub subsample: usize,
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RevenueOfflineConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub long_running: bool,
    #[serde(default)]
    pub graph: GraphSpec,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Defaults to `floor(ln 2 / eps)`.
    #[serde(default)]
    pub iterations: Option<usize>,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocationOnlineConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub long_running: bool,
    pub n: usize,
    pub horizon: usize,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub steps: Option<usize>,
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticOfflineConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub long_running: bool,
    pub distribution: QuadraticDistribution,
    pub n: usize,
    pub m: usize,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default)]
    pub iterations: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticSweepConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub long_running: bool,
    pub distribution: QuadraticDistribution,
    #[serde(deserialize_with = "one_or_many")]
    pub n: Vec<usize>,
    /// `m = max(1, floor(m_ratio · n))`.
    pub m_ratio: f64,
    pub reps: usize,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default)]
    pub iterations: Option<usize>,
    /// Random starts of the local search that bounds the optimum for `n > 4`.
    #[serde(default = "default_starts")]
    pub reference_starts: usize,
}

fn default_starts() -> usize {
    8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HardnessGapConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub long_running: bool,
    #[serde(deserialize_with = "one_or_many")]
    pub k: Vec<usize>,
    pub l: usize,
    #[serde(deserialize_with = "one_or_many")]
    pub h: Vec<f64>,
}

fn one_or_many<'de, D, T>(de: D) -> std::result::Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany<T> {
        One(T),
        Many(Vec<T>),
    }
    Ok(match OneOrMany::deserialize(de)? {
        OneOrMany::One(v) => vec![v],
        OneOrMany::Many(v) => v,
    })
}

impl ExperimentConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::RevenueOnline(_) => "revenue-online",
            Self::RevenueOffline(_) => "revenue-offline",
            Self::LocationOnline(_) => "location-online",
            Self::QuadraticOffline(_) => "quadratic-offline",
            Self::QuadraticSweep(_) => "quadratic-sweep",
            Self::HardnessGap(_) => "hardness-gap",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Self::RevenueOnline(c) => c.seed,
            Self::RevenueOffline(c) => c.seed,
            Self::LocationOnline(c) => c.seed,
            Self::QuadraticOffline(c) => c.seed,
            Self::QuadraticSweep(c) => c.seed,
            Self::HardnessGap(c) => c.seed,
        }
    }

    pub fn is_long_running(&self) -> bool {
        match self {
            Self::RevenueOnline(c) => c.long_running,
            Self::RevenueOffline(c) => c.long_running,
            Self::LocationOnline(c) => c.long_running,
            Self::QuadraticOffline(c) => c.long_running,
            Self::QuadraticSweep(c) => c.long_running,
            Self::HardnessGap(c) => c.long_running,
        }
    }

    fn output_field(&self) -> Option<&PathBuf> {
        match self {
            Self::RevenueOnline(c) => c.output.as_ref(),
            Self::RevenueOffline(c) => c.output.as_ref(),
            Self::LocationOnline(c) => c.output.as_ref(),
            Self::QuadraticOffline(c) => c.output.as_ref(),
            Self::QuadraticSweep(c) => c.output.as_ref(),
            Self::HardnessGap(c) => c.output.as_ref(),
        }
    }

    /// The configured output path, or `out/<kind>.csv`.
    pub fn output_path(&self) -> PathBuf {
        self.output_field()
            .cloned()
            .unwrap_or_else(|| PathBuf::from("out").join(format!("{}.csv", self.kind())))
    }

    /// Parses a JSON document, applying `key=value` overrides first. Keys may
    /// be dotted (`graph.vertices=500`); values are JSON when they parse as
    /// JSON and strings otherwise.
    pub fn from_json_str(text: &str, overrides: &[String]) -> Result<Self> {
        let mut doc: Value = serde_json::from_str(text)?;
        for item in overrides {
            apply_override(&mut doc, item)?;
        }
        let cfg: Self = serde_json::from_value(doc).map_err(|e| Error::config("<document>", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>, overrides: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_json_str(&text, overrides)
    }

    pub fn validate(&self) -> Result<()> {
        fn eps_ok(field: &str, eps: f64) -> Result<()> {
            if eps > 0.0 && eps < 1.0 {
                Ok(())
            } else {
                Err(Error::config(field, format!("must lie in (0, 1), got {eps}")))
            }
        }
        fn positive(field: &str, v: usize) -> Result<()> {
            if v == 0 {
                Err(Error::config(field, "must be at least 1"))
            } else {
                Ok(())
            }
        }
        fn sum_bounds(lo: f64, hi: f64) -> Result<()> {
            if !(lo >= 0.0 && lo <= hi) {
                return Err(Error::config("lo", format!("need 0 <= lo <= hi, got lo = {lo}, hi = {hi}")));
            }
            Ok(())
        }
        fn p_ok(p: f64) -> Result<()> {
            if p > 0.0 && p < 1.0 {
                Ok(())
            } else {
                Err(Error::config("p", format!("must lie in (0, 1), got {p}")))
            }
        }
        fn sigma_ok(sigma: f64) -> Result<()> {
            if sigma >= 0.0 && sigma.is_finite() {
                Ok(())
            } else {
                Err(Error::config("sigma", format!("must be finite and >= 0, got {sigma}")))
            }
        }
        fn graph_ok(g: &GraphSpec) -> Result<()> {
            if let Some(f) = &g.file {
                if !f.exists() {
                    return Err(Error::config("graph.file", format!("{} does not exist", f.display())));
                }
            } else if g.vertices < 2 {
                return Err(Error::config("graph.vertices", "must be at least 2"));
            }
            Ok(())
        }
        match self {
            Self::RevenueOnline(c) => {
                graph_ok(&c.graph)?;
                p_ok(c.p)?;
                positive("horizon", c.horizon)?;
                if let Some(eps) = c.eps {
                    eps_ok("eps", eps)?;
                } else if c.horizon < 2 {
                    return Err(Error::config("horizon", "must be at least 2 when eps is unset"));
                }
                if let Some(s) = c.steps {
                    positive("steps", s)?;
                }
                positive("subsample", c.subsample)?;
                sum_bounds(c.lo, c.hi)?;
                sigma_ok(c.sigma)
            }
            Self::RevenueOffline(c) => {
                graph_ok(&c.graph)?;
                p_ok(c.p)?;
                eps_ok("eps", c.eps)?;
                if let Some(t) = c.iterations {
                    positive("iterations", t)?;
                }
                sum_bounds(c.lo, c.hi)
            }
            Self::LocationOnline(c) => {
                positive("n", c.n)?;
                positive("horizon", c.horizon)?;
                if let Some(eps) = c.eps {
                    eps_ok("eps", eps)?;
                } else if c.horizon < 2 {
                    return Err(Error::config("horizon", "must be at least 2 when eps is unset"));
                }
                if let Some(s) = c.steps {
                    positive("steps", s)?;
                }
                sum_bounds(c.lo, c.hi)?;
                if c.hi > c.n as f64 {
                    return Err(Error::config("hi", "must not exceed n"));
                }
                sigma_ok(c.sigma)
            }
            Self::QuadraticOffline(c) => {
                positive("n", c.n)?;
                positive("m", c.m)?;
                eps_ok("eps", c.eps)?;
                if let Some(t) = c.iterations {
                    positive("iterations", t)?;
                }
                Ok(())
            }
            Self::QuadraticSweep(c) => {
                if c.n.is_empty() || c.n.contains(&0) {
                    return Err(Error::config("n", "need a non-empty list of positive sizes"));
                }
                if !(c.m_ratio > 0.0 && c.m_ratio.is_finite()) {
                    return Err(Error::config("m_ratio", "must be positive"));
                }
                positive("reps", c.reps)?;
                eps_ok("eps", c.eps)?;
                if let Some(t) = c.iterations {
                    positive("iterations", t)?;
                }
                Ok(())
            }
            Self::HardnessGap(c) => {
                if c.k.is_empty() || c.h.is_empty() {
                    return Err(Error::config("k", "need at least one k and one h"));
                }
                positive("l", c.l)?;
                for &h in &c.h {
                    if !(0.0..1.0).contains(&h) {
                        return Err(Error::config("h", format!("must lie in [0, 1), got {h}")));
                    }
                }
                Ok(())
            }
        }
    }
}

fn apply_override(doc: &mut Value, item: &str) -> Result<()> {
    let (key, raw) = item
        .split_once('=')
        .ok_or_else(|| Error::config(item, "override must look like key=value"))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut target = doc;
    let parts: Vec<&str> = key.split('.').collect();
    for (depth, part) in parts.iter().enumerate() {
        let obj = target
            .as_object_mut()
            .ok_or_else(|| Error::config(key, "override path crosses a non-object"))?;
        if depth + 1 == parts.len() {
            obj.insert(part.to_string(), value);
            return Ok(());
        }
        target = obj
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    Err(Error::config(key, "empty override key"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUAD: &str = r#"{"kind": "quadratic-offline", "distribution": "uniform", "n": 4, "m": 2, "seed": 3}"#;

    #[test]
    fn parses_and_overrides() {
        let cfg = ExperimentConfig::from_json_str(QUAD, &["n=8".into(), "eps=0.05".into()]).unwrap();
        match cfg {
            ExperimentConfig::QuadraticOffline(c) => {
                assert_eq!(c.n, 8);
                assert_eq!(c.eps, 0.05);
                assert_eq!(c.seed, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dotted_override_creates_nested_objects() {
        let text = r#"{"kind": "revenue-offline", "lo": 0.25, "hi": 1}"#;
        let cfg = ExperimentConfig::from_json_str(text, &["graph.vertices=50".into()]).unwrap();
        match cfg {
            ExperimentConfig::RevenueOffline(c) => assert_eq!(c.graph.vertices, 50),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_names_fields() {
        match ExperimentConfig::from_json_str(QUAD, &["eps=1.5".into()]) {
            Err(Error::Config { field, .. }) => assert_eq!(field, "eps"),
            other => panic!("{other:?}"),
        }
        assert!(ExperimentConfig::from_json_str(QUAD, &["bogus=1".into()]).is_err());
        assert!(ExperimentConfig::from_json_str(QUAD, &["novalue".into()]).is_err());
    }

    #[test]
    fn scalar_or_list_fields() {
        let text = r#"{"kind": "hardness-gap", "k": 100, "l": 2, "h": [0, 0.5]}"#;
        match ExperimentConfig::from_json_str(text, &[]).unwrap() {
            ExperimentConfig::HardnessGap(c) => {
                assert_eq!(c.k, vec![100]);
                assert_eq!(c.h, vec![0.0, 0.5]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn default_output_path() {
        let cfg = ExperimentConfig::from_json_str(QUAD, &[]).unwrap();
        assert_eq!(cfg.output_path(), PathBuf::from("out/quadratic-offline.csv"));
    }
}
