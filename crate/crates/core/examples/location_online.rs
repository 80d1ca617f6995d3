//! Online facility location: users arrive at random positions and the
//! opening vector must keep its total between 1 and 2.
//!
//! `cargo run --example location_online`

use std::sync::Arc;

use drsubmax::ingest::LocationScenario;
use drsubmax::meta_fw::{meta_fw, FnStream, MetaFwConfig};
use drsubmax::nmfw::{nmfw, NmfwConfig};
use drsubmax::objectives::Objective;
use drsubmax::sets::SumBoxPolytope;

fn main() -> drsubmax::Result<()> {
    let n = 15;
    let scenario = LocationScenario::new(n, 3)?;
    let set = SumBoxPolytope::new(n, 1.0, 2.0)?;
    let cfg = MetaFwConfig::for_horizon(200)?;
    let stream = FnStream::new(n, |t| Ok(Arc::new(scenario.round_objective(t)?) as Arc<dyn Objective>));
    let rec = meta_fw(stream, &set, &cfg, None)?;

    // Offline hindsight baseline: NMFW on one user's objective.
    let offline = nmfw(scenario.objective(), &set, &NmfwConfig::from_eps(0.03)?)?;
    println!("online average per round  {:.4}", rec.total() / rec.values.len() as f64);
    println!("offline value, first user {:.4}", offline.best_value());
    println!("last played point         {:.3?}", rec.played.last().unwrap());
    Ok(())
}
