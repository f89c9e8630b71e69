//! Signal amplitudes, per-region thresholds and the resulting 1-bit decisions
//! for one target, compared with their firing probabilities.

use codeloc::geometry::{deploy_grid, split_region, Position, Rect, RegionOfInterest};
use codeloc::rng::seeded;
use codeloc::signal::{
    amplitude, firing_probability, sense_and_quantize, thresholds_for, NoiseModel, PropagationModel,
};

fn main() -> codeloc::error::Result<()> {
    let field = deploy_grid(4, 4, Rect::square(8.0)?)?;
    let partition = split_region(&RegionOfInterest::Single(field.roi()), 4, &field, &field.all_sensors())?;
    let model = PropagationModel::default();
    let noise = NoiseModel::gaussian(3.0)?;
    let thresholds = thresholds_for(&partition, &model, &field)?;
    let target = Position::new(2.6, 1.4);

    println!("target at ({}, {}), noise sigma {}", target.x, target.y, noise.sigma());
    println!("sensor  region  amplitude  threshold  P(D=1)");
    let mut expected = Vec::new();
    for (c, &s) in partition.active().iter().enumerate() {
        let a = amplitude(&model, &target, &field.position(s))?;
        let eta = thresholds.as_slice()[c];
        let p = firing_probability(&noise, eta, a);
        expected.push(p);
        println!(
            "{s:>6}  {:>6}  {a:>9.3}  {eta:>9.3}  {p:>6.3}",
            partition.membership()[c]
        );
    }

    let trials = 20_000;
    let mut rng = seeded(1);
    let mut ones = vec![0usize; expected.len()];
    for _ in 0..trials {
        let d = sense_and_quantize(
            &model,
            &noise,
            &target,
            &field,
            partition.active(),
            &thresholds,
            &mut rng,
        )?;
        for (i, bit) in d.iter().enumerate() {
            ones[i] += bit as usize;
        }
    }
    let worst = ones
        .iter()
        .zip(&expected)
        .map(|(&o, &p)| (o as f64 / trials as f64 - p).abs())
        .fold(0.0, f64::max);
    println!("\nlargest gap between empirical and predicted firing rate over {trials} draws: {worst:.4}");
    Ok(())
}
