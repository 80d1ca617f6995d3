//! Regularized-Follow-the-Leader against an alternating adversary, with its
//! regret next to the `D G sqrt(2T)` bound.
//!
//! `cargo run --example rftl_regret`

use drsubmax::rftl::{regret_bound, regret_of, LearningRate, Rftl};
use drsubmax::sets::{FeasibleSet, SumBoxPolytope};

fn main() -> drsubmax::Result<()> {
    let set = SumBoxPolytope::new(3, 0.5, 2.0)?;
    let g = 1.0;
    for horizon in [10, 100, 1000, 10_000] {
        let mut alg = Rftl::new(&set, LearningRate::Tuned { gradient_bound: g, horizon })?;
        let (mut picks, mut ds) = (Vec::new(), Vec::new());
        for t in 0..horizon {
            picks.push(alg.pick()?);
            let s = if t % 2 == 0 { 1.0 } else { -1.0 };
            let d = vec![0.6 * s, -0.6 * s, 0.5];
            alg.feed(&d)?;
            ds.push(d);
        }
        let regret = regret_of(&picks, &ds, &set)?;
        let bound = regret_bound(set.diameter_upper_bound(), g, horizon);
        println!("T = {horizon:>6}: regret {regret:>9.3}, bound {bound:>9.3}");
    }
    Ok(())
}
