//! The geometric oracles on an H-polytope read from text: linear
//! maximization, Euclidean projection and the min-inf-norm point.
//!
//! `cargo run --example lp_and_projection`

use std::path::Path;

use drsubmax::lp::{self, LinearProgram};
use drsubmax::sets::{FeasibleSet, HPolytope};

const POLYTOPE: &str = "\
3 3
0.8 0.3 0.5 1.0
0.2 0.9 0.4 1.0
-1 -1 -1 -0.6
";

fn main() -> drsubmax::Result<()> {
    let set = HPolytope::parse(POLYTOPE, Path::new("<inline>"))?;
    let c = [1.0, 0.4, -0.2];
    println!("lmo({c:?})           = {:.4?}", set.lmo(&c)?);
    let z = [1.2, -0.3, 0.9];
    println!("project({z:?})   = {:.4?}", set.project(&z)?);
    println!("min-inf-norm point      = {:.4?}", set.min_inf_norm_point()?);

    // The simplex solver directly, with general upper bounds.
    let prog = LinearProgram::with_upper_bounds(
        vec![vec![1.0, 1.0], vec![1.0, -1.0]],
        vec![3.0, 1.0],
        vec![2.0, 1.0],
        vec![2.5, 2.5],
    )?;
    let sol = lp::solve(&prog)?;
    println!("LP optimum {:.4} at {:.4?} ({:?})", sol.objective, sol.x, sol.status);
    Ok(())
}
