//! Non-monotone Frank-Wolfe on a random quadratic program, compared with the
//! exact optimum.
//!
//! `cargo run --example offline_quadratic`

use drsubmax::ingest::{gen_quadratic, QuadraticDistribution, QuadraticInstanceSpec};
use drsubmax::nmfw::{nmfw, simple_guarantee, NmfwConfig};
use drsubmax::objectives::Objective;
use drsubmax::reference::quadratic_max_exact;
use drsubmax::sets::FeasibleSet;

fn main() -> drsubmax::Result<()> {
    let inst = gen_quadratic(&QuadraticInstanceSpec {
        n: 4,
        m: 2,
        distribution: QuadraticDistribution::Uniform,
        seed: 42,
    })?;
    let (obj, set) = (&inst.objective, &inst.polytope);
    let eps = 0.03;
    let run = nmfw(obj, set, &NmfwConfig::from_eps(eps)?)?;
    let (opt, argmax) = quadratic_max_exact(obj, set)?;
    let beta = obj.smoothness().unwrap_or(0.0);
    let bound = simple_guarantee(eps, 0.0, opt, beta, set.diameter_upper_bound());

    println!("iterations     {}", run.values.len() - 1);
    println!("best value     {:.6} at iterate {}", run.best_value(), run.chosen);
    println!("optimum        {opt:.6} at {argmax:.3?}");
    println!("ratio          {:.4}", run.best_value() / opt);
    println!("guaranteed  >= {bound:.6}");
    Ok(())
}
