//! Meta-Frank-Wolfe on revenue maximization: each round a random subset of
//! users is active, and the seller plays a budgeted investment vector.
//!
//! `cargo run --example online_revenue`

use std::sync::Arc;

use drsubmax::ingest::{random_graph, subsample_step};
use drsubmax::meta_fw::{meta_fw, FnStream, MetaFwConfig, NoiseSpec};
use drsubmax::objectives::Objective;
use drsubmax::rng;
use drsubmax::sets::SumBoxPolytope;

fn main() -> drsubmax::Result<()> {
    let graph = random_graph(150, 8.0, true, 7)?;
    let set = SumBoxPolytope::new(graph.num_vertices(), 0.1, 1.0)?;
    let cfg = MetaFwConfig::for_horizon(100)?;
    let stream = FnStream::new(graph.num_vertices(), |t| {
        let mut r = rng::stream(7, &format!("round/{t}"));
        let active = subsample_step(&graph, 100, &mut r)?;
        Ok(Arc::new(active.revenue(0.3)?) as Arc<dyn Objective>)
    });
    let rec = meta_fw(stream, &set, &cfg, Some(NoiseSpec { sigma: 0.01, seed: 7 }))?;

    println!("eps = {:.3}, L = {}", cfg.eps, cfg.steps);
    for t in [1, 10, 50, 100] {
        println!("round {t:>3}: value {:.4}, cumulative {:.3}", rec.values[t - 1], rec.cumulative[t - 1]);
    }
    println!("largest gradient estimate norm {:.3}", rec.max_gradient_norm());
    Ok(())
}
