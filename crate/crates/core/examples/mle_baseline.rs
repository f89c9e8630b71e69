//! Coded localization against the maximum-likelihood estimate computed from
//! the same first-iteration decisions.

use std::time::Instant;

use codeloc::harness::{run_experiment, ExperimentConfig, OneOrMany};
use codeloc::localization::Scheme;

fn main() -> codeloc::error::Result<()> {
    let cfg = ExperimentConfig {
        scheme: Scheme::Exclusion,
        k_stop: 4,
        alpha: OneOrMany::Many(vec![0.0, 0.2, 0.4]),
        baseline_mle: true,
        mle_grid: 32,
        trials: 100,
        ..ExperimentConfig::default()
    };
    let start = Instant::now();
    let report = run_experiment(&cfg)?;
    println!("alpha  coded MSE  MLE MSE");
    for p in &report.points {
        let (mle, _) = p.mle_mse.expect("baseline requested");
        println!("{:<5}  {:>9.3}  {:>7.3}", p.sweep_value, p.mse, mle);
    }
    println!(
        "{} trials per point in {:.1} s",
        cfg.trials,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
