//! Every trial draws from its own stream keyed by (seed, sweep point, trial),
//! so results do not depend on the worker count or on execution order.

use codeloc::harness::experiment::run_one;
use codeloc::harness::{run_experiment, ExperimentConfig};
use rand::Rng;

fn main() -> codeloc::error::Result<()> {
    let a: Vec<u32> = (0..3).map(|t| codeloc::rng::trial_stream(42, 0, t).random()).collect();
    let b: Vec<u32> = (0..3)
        .rev()
        .map(|t| codeloc::rng::trial_stream(42, 0, t).random())
        .collect();
    println!("first draw of trials 0..3: {a:?}; in reverse order: {b:?}");

    let cfg = ExperimentConfig {
        trials: 500,
        seed: 42,
        ..ExperimentConfig::default()
    };
    let one = run_experiment(&ExperimentConfig {
        workers: Some(1),
        ..cfg.clone()
    })?;
    let four = run_experiment(&ExperimentConfig {
        workers: Some(4),
        ..cfg.clone()
    })?;
    let (p1, p4) = (&one.points[0], &four.points[0]);
    println!("1 worker: P_D {} MSE {}", p1.pd, p1.mse);
    println!("4 workers: P_D {} MSE {}", p4.pd, p4.mse);
    assert_eq!((p1.pd, p1.mse, p1.mse_ci), (p4.pd, p4.mse, p4.mse_ci));

    let setup = cfg.point(0.0)?;
    let rec = run_one(&setup, 42, 0, 137, None)?;
    println!(
        "trial 137 replayed alone: target ({:.3}, {:.3}) trace {:?}",
        rec.target.x, rec.target.y, rec.region_trace
    );
    Ok(())
}
