//! Symmetry gap of the scrambled directed-cut instances: how far the best
//! symmetric solution falls below the true optimum as `k` grows.
//!
//! `cargo run --example hardness_gap`

use drsubmax::hardness::{gap_report, ScrambledInstance};
use drsubmax::numeric::inf_norm;
use drsubmax::sets::FeasibleSet;

fn main() -> drsubmax::Result<()> {
    println!("{:>5} {:>5} {:>10} {:>10} {:>8}", "h", "k", "max F", "max G", "ratio");
    for h in [0.0, 0.25, 0.5] {
        for k in [4, 16, 100, 1000] {
            let r = gap_report(k, 2, h, 1)?;
            println!("{h:>5} {k:>5} {:>10.5} {:>10.5} {:>8.5}", r.max_f, r.max_g, r.ratio);
        }
        println!("      limit (1 - h)/4 = {:.5}", (1.0 - h) / 4.0);
    }
    let inst = ScrambledInstance::new(4, 3, 0.5, 9)?;
    let y = inst.feasible_set().min_inf_norm_point()?;
    println!("min inf-norm over the scrambled set (h = 0.5): {:.6}", inf_norm(&y));
    Ok(())
}
