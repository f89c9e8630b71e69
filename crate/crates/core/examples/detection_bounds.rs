//! Closed-form view of one iteration: error probabilities, the lower bound on
//! detection, exact enumeration on a small instance, and the design table.

use codeloc::analysis::{exact_pd, lambda_max, IterationModel};
use codeloc::geometry::{deploy_grid, Rect, RegionOfInterest};
use codeloc::harness::{run_analysis, ExperimentConfig, OneOrMany};
use codeloc::localization::{build_stage, SchemeConfig};

fn main() -> codeloc::error::Result<()> {
    let field = deploy_grid(2, 4, Rect::square(8.0)?)?;
    let scheme = SchemeConfig::default();
    let stage = build_stage(
        RegionOfInterest::Single(field.roi()),
        &field.all_sensors(),
        &field,
        &scheme,
    )?;
    for alpha in [0.0, 0.2, 0.4, 0.5] {
        let model = IterationModel {
            field: &field,
            partition: &stage.partition,
            code: &stage.code,
            thresholds: &stage.thresholds,
            propagation: &scheme.propagation,
            noise: &scheme.noise,
            alpha,
        };
        let bound = lambda_max(&model, 0.1)?;
        println!(
            "8 sensors, alpha {alpha}: exact P_d {:.5}, lambda_max {:.4}, bound {:?}",
            exact_pd(&model)?,
            bound.lambda_max,
            bound.pd_lower
        );
    }

    let cfg = ExperimentConfig {
        alpha: OneOrMany::Many(vec![0.0, 0.25]),
        trials: 2000,
        ..ExperimentConfig::default()
    };
    let table = run_analysis(&cfg)?;
    println!();
    table.write_csv(std::io::stdout())?;
    Ok(())
}
