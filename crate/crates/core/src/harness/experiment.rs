use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, PointSetup, SweepAxis};
use super::stats::{bootstrap_mean_interval, mean, wilson_interval, BOOTSTRAP_RESAMPLES};
use crate::decoding::Decision;
use crate::error::{Error, Result};
use crate::geometry::{Position, RegionOfInterest, SensorField};
use crate::localization::{build_stage, mle_estimate, run_trial, run_true_path_iteration, MleOptions, Stage};
use crate::rng::{trial_stream, Stream};

/// Outcome of one Monte-Carlo trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub target: Position,
    pub estimate: Position,
    pub sq_err: f64,
    pub region_correct: bool,
    pub region_trace: Vec<Decision>,
    /// Correctness of each iteration's decision on its own.
    pub iteration_correct: Vec<bool>,
    pub mle: Option<Position>,
}

/// Aggregate of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub sweep_value: f64,
    pub trials: usize,
    pub mse: f64,
    pub mse_ci: (f64, f64),
    pub pd: f64,
    pub pd_ci: (f64, f64),
    pub wall_ms: f64,
    /// `P(iteration k correct | iterations < k correct)` for every k.
    pub per_iteration_pd: Vec<f64>,
    /// Number of trials reaching iteration k with all earlier decisions correct.
    pub per_iteration_trials: Vec<usize>,
    /// Likelihood-baseline squared error summary, when requested.
    pub mle_mse: Option<(f64, (f64, f64))>,
    pub records: Vec<TrialRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub axis: SweepAxis,
    pub points: Vec<PointReport>,
}

/// Draws a target uniformly in the field, away from every sensor.
pub fn sample_target(field: &SensorField, rng: &mut Stream) -> Position {
    let roi = field.roi();
    loop {
        let p = Position::new(
            roi.x_min + rng.random::<f64>() * roi.width(),
            roi.y_min + rng.random::<f64>() * roi.height(),
        );
        if field.sensor_at(&p).is_none() {
            return p;
        }
    }
}

/// One trial of sweep point `point`; depends only on `(seed, point, trial)`.
pub fn run_one(
    setup: &PointSetup,
    seed: u64,
    point: usize,
    trial: usize,
    baseline: Option<(&Stage, &MleOptions)>,
) -> Result<TrialRecord> {
    let mut rng = trial_stream(seed, point as u64, trial as u64);
    let target = sample_target(&setup.field, &mut rng);
    let est = run_trial(&setup.field, &setup.scheme, target, &mut rng)?;
    let mle = match baseline {
        Some((stage, opts)) => Some(mle_estimate(
            &est.initial_word,
            &setup.field,
            stage.partition.active(),
            &stage.thresholds,
            &setup.scheme.propagation,
            &setup.scheme.noise,
            &setup.field.roi(),
            opts,
        )?),
        None => None,
    };
    Ok(TrialRecord {
        trial,
        target,
        estimate: est.theta_hat,
        sq_err: sq_dist(&target, &est.theta_hat),
        region_correct: est.correct_region,
        region_trace: est.region_trace,
        iteration_correct: est.trace.iter().map(|r| r.correct).collect(),
        mle,
    })
}

fn sq_dist(a: &Position, b: &Position) -> f64 {
    let d = a.distance(b);
    d * d
}

/// Aggregates ordered trial records into a sweep-point summary.
pub fn summarize(
    sweep_value: f64,
    records: Vec<TrialRecord>,
    seed: u64,
    point: usize,
    wall_ms: f64,
    keep: bool,
) -> PointReport {
    let n = records.len();
    let errors: Vec<f64> = records.iter().map(|r| r.sq_err).collect();
    let correct = records.iter().filter(|r| r.region_correct).count();
    let mut boot_rng = trial_stream(seed ^ 0xB007_5712_A9E5_0001, point as u64, u64::MAX);
    let mse_ci = bootstrap_mean_interval(&errors, BOOTSTRAP_RESAMPLES, &mut boot_rng);

    let iterations = records.first().map_or(0, |r| r.iteration_correct.len());
    let mut reached = vec![0usize; iterations];
    let mut passed = vec![0usize; iterations];
    for r in &records {
        for (k, &ok) in r.iteration_correct.iter().enumerate() {
            reached[k] += 1;
            if !ok {
                break;
            }
            passed[k] += 1;
        }
    }
    let per_iteration_pd = reached
        .iter()
        .zip(&passed)
        .map(|(&t, &p)| if t == 0 { f64::NAN } else { p as f64 / t as f64 })
        .collect();

    let mle_mse = if records.iter().all(|r| r.mle.is_some()) && n > 0 {
        let e: Vec<f64> = records.iter().map(|r| sq_dist(&r.target, &r.mle.unwrap())).collect();
        Some((
            mean(&e),
            bootstrap_mean_interval(&e, BOOTSTRAP_RESAMPLES, &mut boot_rng),
        ))
    } else {
        None
    };

    PointReport {
        sweep_value,
        trials: n,
        mse: mean(&errors),
        mse_ci,
        pd: if n == 0 { f64::NAN } else { correct as f64 / n as f64 },
        pd_ci: wilson_interval(correct, n),
        wall_ms,
        per_iteration_pd,
        per_iteration_trials: reached,
        mle_mse,
        records: if keep { records } else { Vec::new() },
    }
}

fn run_point(cfg: &ExperimentConfig, point: usize, value: f64) -> Result<PointReport> {
    let setup = cfg.point(value)?;
    let opts = cfg.mle_options();
    let stage = if cfg.baseline_mle {
        Some(build_stage(
            RegionOfInterest::Single(setup.field.roi()),
            &setup.field.all_sensors(),
            &setup.field,
            &setup.scheme,
        )?)
    } else {
        None
    };
    let baseline = stage.as_ref().map(|s| (s, &opts));
    let start = Instant::now();
    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_one(&setup, cfg.seed, point, t, baseline))
        .collect::<Result<Vec<_>>>()?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(summarize(value, records, cfg.seed, point, wall_ms, cfg.detail))
}

/// Fraction of `trials` in which iteration `k` of the basic scheme is decoded
/// correctly with the ROI held on the regions containing the target. Trial `t`
/// uses the same stream as trial `t` of the full pipeline, so `k = 0` agrees
/// with the pipeline's first decision exactly.
pub fn true_path_pd(setup: &PointSetup, seed: u64, point: usize, k: usize, trials: usize) -> Result<f64> {
    let hits = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_stream(seed, point as u64, t as u64);
            let target = sample_target(&setup.field, &mut rng);
            run_true_path_iteration(&setup.field, &setup.scheme, target, k, &mut rng).map(|r| r.correct as usize)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<usize>();
    Ok(hits as f64 / trials as f64)
}

/// Runs every sweep point. Results are identical for any worker count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    run_experiment_with_progress(cfg, |_, _| {})
}

/// As [`run_experiment`], calling `progress(index, report)` after each point.
pub fn run_experiment_with_progress(
    cfg: &ExperimentConfig,
    mut progress: impl FnMut(usize, &PointReport),
) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::config("workers", e.to_string()))?;
    let mut points = Vec::new();
    for (i, v) in cfg.sweep_points().into_iter().enumerate() {
        let report = pool.install(|| run_point(cfg, i, v))?;
        progress(i, &report);
        points.push(report);
    }
    Ok(ExperimentReport {
        axis: cfg.sweep,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::OneOrMany;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            rows: 8,
            cols: 8,
            trials: 40,
            seed: 77,
            detail: true,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn pd_is_mean_of_flags() {
        let rep = run_experiment(&small()).unwrap();
        let p = &rep.points[0];
        let flags = p.records.iter().filter(|r| r.region_correct).count();
        assert_eq!(p.pd, flags as f64 / p.trials as f64);
        assert!(p.pd_ci.0 <= p.pd && p.pd <= p.pd_ci.1);
        assert!(p.mse >= 0.0);
        assert_eq!(p.per_iteration_trials[0], 40);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = run_experiment(&ExperimentConfig {
            workers: Some(1),
            ..small()
        })
        .unwrap();
        let many = run_experiment(&ExperimentConfig {
            workers: Some(4),
            ..small()
        })
        .unwrap();
        for (a, b) in one.points.iter().zip(&many.points) {
            assert_eq!(a.records, b.records);
            assert_eq!((a.mse, a.pd, a.mse_ci), (b.mse, b.pd, b.mse_ci));
        }
    }

    #[test]
    fn true_path_agrees_with_pipeline_at_first_iteration() {
        let cfg = ExperimentConfig {
            trials: 300,
            alpha: OneOrMany::One(0.3),
            ..small()
        };
        let rep = run_experiment(&cfg).unwrap();
        let setup = cfg.point(0.3).unwrap();
        let pd0 = true_path_pd(&setup, cfg.seed, 0, 0, cfg.trials).unwrap();
        assert_eq!(pd0, rep.points[0].per_iteration_pd[0]);
        let pd1 = true_path_pd(&setup, cfg.seed, 0, 1, cfg.trials).unwrap();
        assert!((0.0..=1.0).contains(&pd1));
    }

    #[test]
    fn trials_are_order_independent() {
        let cfg = small();
        let setup = cfg.point(0.0).unwrap();
        let forward: Vec<_> = (0..10).map(|t| run_one(&setup, 5, 0, t, None).unwrap()).collect();
        let backward: Vec<_> = (0..10).rev().map(|t| run_one(&setup, 5, 0, t, None).unwrap()).collect();
        for (a, b) in forward.iter().zip(backward.iter().rev()) {
            assert_eq!(a, b);
        }
    }
}
