//! Sweeps the Byzantine fraction for both schemes and writes one summary CSV
//! per scheme. Pass an output directory as the first argument; the system
//! temporary directory is used otherwise.

use std::path::PathBuf;

use codeloc::harness::{emit_csv, parse_csv, run_experiment_with_progress, ExperimentConfig, OneOrMany};
use codeloc::localization::Scheme;

fn main() -> codeloc::error::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let alphas = OneOrMany::Many(vec![0.0, 0.1, 0.2, 0.3, 0.4]);
    for (scheme, k_stop, name) in [(Scheme::Basic, 2, "basic"), (Scheme::Exclusion, 4, "exclusion")] {
        let cfg = ExperimentConfig {
            scheme,
            k_stop,
            alpha: alphas.clone(),
            trials: 2000,
            seed: 7,
            ..ExperimentConfig::default()
        };
        let report = run_experiment_with_progress(&cfg, |i, p| {
            eprintln!("{name} point {i}: alpha {} done in {:.0} ms", p.sweep_value, p.wall_ms);
        })?;
        let path = dir.join(format!("byzantine_{name}.csv"));
        emit_csv(&report, &path)?;
        println!("{name}: {}", path.display());
        for row in parse_csv(&path)? {
            println!(
                "  alpha {:<4} P_D {:.4} [{:.4}, {:.4}]  MSE {:.3} [{:.3}, {:.3}]",
                row.sweep_value, row.pd, row.pd_ci.0, row.pd_ci.1, row.mse, row.mse_ci.0, row.mse_ci.1
            );
        }
    }
    Ok(())
}
