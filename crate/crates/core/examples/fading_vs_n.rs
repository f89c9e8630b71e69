//! Region detection as the network grows, on an ideal channel and under
//! Rayleigh fading of two strengths with soft-decision decoding.

use codeloc::channel::ChannelKind;
use codeloc::harness::{run_experiment, ExperimentConfig, SweepAxis};
use codeloc::localization::Decoding;

fn main() -> codeloc::error::Result<()> {
    let ns = vec![64.0, 256.0, 1024.0, 4096.0];
    let base = ExperimentConfig {
        sweep: SweepAxis::N,
        sweep_values: ns.clone(),
        trials: 2000,
        ..ExperimentConfig::default()
    };
    let mut columns = vec![("ideal".to_string(), run_experiment(&base)?)];
    for sigma_f in [1.5, 4.0] {
        let cfg = ExperimentConfig {
            channel: ChannelKind::Rayleigh,
            decoding: Decoding::Soft,
            sigma_f,
            ..base.clone()
        };
        columns.push((format!("sigma_f={sigma_f}"), run_experiment(&cfg)?));
    }
    print!("{:>6}", "N");
    for (name, _) in &columns {
        print!("  {name:>12}");
    }
    println!();
    for (i, n) in ns.iter().enumerate() {
        print!("{n:>6}");
        for (_, rep) in &columns {
            print!("  {:>12.4}", rep.points[i].pd);
        }
        println!();
    }
    Ok(())
}
