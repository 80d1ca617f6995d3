use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drsubmax::meta_fw::{
    meta_fw, ConstantStream, FnStream, MetaFwConfig, NoiseSpec, OnlineProtocol, ProtocolEvent,
};
use drsubmax::objectives::{LinearObjective, Objective, QuadraticObjective};
use drsubmax::rftl::{regret_bound, regret_of, LearningRate, Rftl};
use drsubmax::sets::{FeasibleSet, SumBoxPolytope};
use drsubmax::Error;

#[test]
fn adaptive_rftl_regret_grows_sublinearly() {
    let set = SumBoxPolytope::new(4, 0.5, 2.0).unwrap();
    let mut per_round = Vec::new();
    for horizon in [100usize, 1600] {
        let mut r = ChaCha8Rng::seed_from_u64(horizon as u64);
        let mut alg = Rftl::new(&set, LearningRate::Adaptive).unwrap();
        let (mut picks, mut ds) = (Vec::new(), Vec::new());
        for _ in 0..horizon {
            picks.push(alg.pick().unwrap());
            let d: Vec<f64> = (0..4).map(|i| r.gen_range(-1.0..1.0) + 0.2 * i as f64).collect();
            alg.feed(&d).unwrap();
            ds.push(d);
        }
        let regret = regret_of(&picks, &ds, &set).unwrap();
        let g = alg.max_feed_norm();
        assert!(regret <= 2.0 * regret_bound(set.diameter_upper_bound(), g, horizon));
        per_round.push(regret / horizon as f64);
    }
    assert!(per_round[1] < per_round[0], "{per_round:?}");
}

fn concave_quadratic() -> QuadraticObjective {
    QuadraticObjective::new(
        vec![vec![-2.0, -0.5], vec![-0.5, -1.0]],
        vec![1.2, 0.9],
        0.0,
    )
    .unwrap()
}

#[test]
fn meta_fw_tracks_a_fixed_objective() {
    let set = SumBoxPolytope::new(2, 0.2, 1.5).unwrap();
    let cfg = MetaFwConfig::for_horizon(400).unwrap();
    let obj: Arc<dyn Objective> = Arc::new(concave_quadratic());
    let rec = meta_fw(ConstantStream(obj.clone()), &set, &cfg, None).unwrap();
    assert_eq!(rec.values.len(), 400);
    assert!(rec.cumulative.windows(2).all(|w| w[1] >= w[0]));
    assert!(rec.norm_decay_violation() <= 1e-9);
    // Late rounds should come close to the best point found by brute force.
    let mut best = f64::NEG_INFINITY;
    for i in 0..=200 {
        for j in 0..=200 {
            let x = [i as f64 / 200.0, j as f64 / 200.0];
            if set.contains(&x, 0.0).unwrap() {
                best = best.max(obj.value(&x).unwrap());
            }
        }
    }
    let tail: f64 = rec.values[300..].iter().sum::<f64>() / 100.0;
    assert!(tail >= 0.9 * best, "{tail} vs {best}");
}

#[test]
fn noisy_runs_are_reproducible() {
    let set = SumBoxPolytope::new(2, 0.2, 1.5).unwrap();
    let cfg = MetaFwConfig::for_horizon(50).unwrap();
    let run = || {
        let stream = FnStream::new(2, |t| {
            let c = vec![(t % 3) as f64 * 0.3, 0.5];
            Ok(Arc::new(LinearObjective::new(c, 0.0)) as Arc<dyn Objective>)
        });
        meta_fw(stream, &set, &cfg, Some(NoiseSpec { sigma: 0.05, seed: 4 })).unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.values, b.values);
    assert_eq!(a.played, b.played);
}

#[test]
fn protocol_enforces_play_before_feedback() {
    let obj: Arc<dyn Objective> = Arc::new(concave_quadratic());
    let mut p = OnlineProtocol::new(ConstantStream(obj)).with_event_log();
    assert!(matches!(p.gradient(&[0.1, 0.1]), Err(Error::Protocol(_))));
    p.play(&[0.2, 0.3]).unwrap();
    p.gradient(&[0.1, 0.1]).unwrap();
    p.end_round().unwrap();
    assert!(matches!(p.events().first(), Some(ProtocolEvent::Play { round: 1, .. })));
}
