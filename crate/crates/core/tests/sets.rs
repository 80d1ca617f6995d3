use proptest::prelude::*;

use drsubmax::hardness::BasicInstance;
use drsubmax::sets::{FeasibleSet, HPolytope, ProductSet, SumBoxPolytope, VertexHull};

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

fn polytope() -> HPolytope {
    HPolytope::new(
        vec![
            vec![0.7, 0.2, 0.5],
            vec![-0.3, 0.8, 0.4],
            vec![-1.0, -1.0, -1.0],
        ],
        vec![1.0, 0.9, -0.3],
        3,
    )
    .unwrap()
}

fn hull() -> VertexHull {
    VertexHull::new(vec![
        vec![0.9, 0.1, 0.3],
        vec![0.2, 0.8, 0.1],
        vec![0.1, 0.2, 0.9],
        vec![0.5, 0.5, 0.5],
    ])
    .unwrap()
}

fn sets() -> Vec<(&'static str, Box<dyn FeasibleSet>)> {
    vec![
        ("sum-box", Box::new(SumBoxPolytope::new(3, 0.4, 1.7).unwrap())),
        ("polytope", Box::new(polytope())),
        ("hull", Box::new(hull())),
        (
            "product",
            Box::new(
                ProductSet::new(vec![
                    Box::new(SumBoxPolytope::new(1, 0.2, 0.6).unwrap()),
                    Box::new(SumBoxPolytope::new(2, 0.5, 1.0).unwrap()),
                ])
                .unwrap(),
            ),
        ),
    ]
}

/// Random members as convex combinations of lmo outputs.
fn members(set: &dyn FeasibleSet, dirs: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let pts: Vec<Vec<f64>> = dirs.iter().map(|d| set.lmo(d).unwrap()).collect();
    let total: f64 = weights.iter().sum();
    (0..set.dim())
        .map(|c| pts.iter().zip(weights).map(|(p, w)| p[c] * w / total).sum())
        .collect()
}

proptest! {
    #[test]
    fn lmo_is_scale_invariant_and_feasible(c in prop::collection::vec(-2.0f64..2.0, 3), alpha in 0.01f64..100.0) {
        for (name, set) in sets() {
            let x = set.lmo(&c).unwrap();
            let scaled: Vec<f64> = c.iter().map(|v| v * alpha).collect();
            prop_assert_eq!(&set.lmo(&scaled).unwrap(), &x, "{}", name);
            prop_assert!(set.contains(&x, 1e-7).unwrap(), "{}", name);
        }
    }

    #[test]
    fn lmo_beats_sampled_members(
        c in prop::collection::vec(-2.0f64..2.0, 3),
        dirs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), 4),
        w in prop::collection::vec(0.01f64..1.0, 4),
    ) {
        for (name, set) in sets() {
            let best = dot(&c, &set.lmo(&c).unwrap());
            let x = members(set.as_ref(), &dirs, &w);
            prop_assert!(dot(&c, &x) <= best + 1e-7 * (1.0 + best.abs()), "{}", name);
        }
    }

    #[test]
    fn projection_is_idempotent_and_optimal(
        z in prop::collection::vec(-1.0f64..2.0, 3),
        dirs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), 4),
        w in prop::collection::vec(0.01f64..1.0, 4),
    ) {
        for (name, set) in sets() {
            let p = set.project(&z).unwrap();
            prop_assert!(set.contains(&p, 1e-7).unwrap(), "{}", name);
            let again = set.project(&p).unwrap();
            prop_assert!(dist(&p, &again) < 1e-6, "{}: not idempotent", name);
            let x = members(set.as_ref(), &dirs, &w);
            let zp: Vec<f64> = z.iter().zip(&p).map(|(a, b)| a - b).collect();
            let xp: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a - b).collect();
            prop_assert!(dot(&zp, &xp) <= 1e-6, "{}: variational inequality {}", name, dot(&zp, &xp));
        }
    }
}

#[test]
fn min_inf_norm_on_basic_polytopes() {
    for (h, k) in [(0.0, 2usize), (0.5, 2), (0.5, 4), (0.9, 16)] {
        let inst = BasicInstance::new(k, h).unwrap();
        let y = inst.polytope().min_inf_norm_point().unwrap();
        let norm = y.iter().fold(0.0f64, |m, v| m.max(*v));
        assert!((norm - h).abs() < 1e-6, "(h={h}, k={k}): {norm}");
        assert!(inst.polytope().contains(&y, 1e-7).unwrap());
    }
}

#[test]
fn sum_box_min_inf_norm_spreads_mass() {
    let set = SumBoxPolytope::new(2, 0.1, 1.0).unwrap();
    let y = set.min_inf_norm_point().unwrap();
    assert!((y[0] - 0.05).abs() < 1e-9 && (y[1] - 0.05).abs() < 1e-9);
}

#[test]
fn polytope_projection_matches_grid() {
    let set = polytope();
    let z = [0.9, 0.8, -0.2];
    let p = set.project(&z).unwrap();
    let steps = 200;
    let mut best = (f64::INFINITY, vec![]);
    for i in 0..=steps {
        for j in 0..=steps {
            for l in 0..=steps {
                let x = [i as f64 / steps as f64, j as f64 / steps as f64, l as f64 / steps as f64];
                if set.contains(&x, 0.0).unwrap() {
                    let d = dist(&x, &z);
                    if d < best.0 {
                        best = (d, x.to_vec());
                    }
                }
            }
        }
    }
    // Grid spacing 5e-3 bounds how far the grid optimum can be.
    assert!(dist(&p, &z) <= best.0 + 1e-9);
    assert!(dist(&p, &best.1) < 1e-2, "{p:?} vs {:?}", best.1);
}
