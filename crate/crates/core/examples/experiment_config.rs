//! Runs an experiment config in-process and summarizes the result, the same
//! path the command-line tool takes.
//!
//! `cargo run --example experiment_config`

use drsubmax::experiments::{run, summarize_tables, ExperimentConfig};

const CONFIG: &str = r#"{
  "kind": "quadratic-sweep",
  "distribution": "exponential",
  "n": [2, 3, 4],
  "m_ratio": 0.5,
  "reps": 4,
  "seed": 5
}"#;

fn main() -> drsubmax::Result<()> {
    let cfg = ExperimentConfig::from_json_str(CONFIG, &["reps=6".to_string()])?;
    let table = run(&cfg)?;
    let summary = summarize_tables(&[table])?;
    println!("{}", summary.header.join(","));
    for row in &summary.rows {
        println!("{}", row.join(","));
    }
    Ok(())
}
