use std::io::Write;

use super::config::ExperimentConfig;
use super::experiment::{run_experiment, true_path_pd};
use crate::analysis::{
    default_resolution, exact_pd, fault_tolerance_fraction, lambda_max, BoundReport, IterationModel,
};
use crate::error::{Error, Result};
use crate::geometry::RegionOfInterest;
use crate::localization::{build_stage, Scheme, SchemeConfig};

/// One `(N, M, k)` line of the design table.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisRow {
    pub sweep_value: f64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub n_k: usize,
    pub fault_tolerance: f64,
    pub bound: BoundReport,
    /// `None` when the code is too long to enumerate.
    pub exact_pd: Option<f64>,
    /// Monte-Carlo rate of iteration `k` with the ROI held on the true path.
    pub simulated_pd: f64,
    /// Full-pipeline rate of iteration `k` given all earlier iterations were right.
    pub pipeline_pd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisTable {
    pub rows: Vec<AnalysisRow>,
}

impl AnalysisTable {
    /// Smallest fault-tolerance fraction over the iterations of every point.
    pub fn min_fault_tolerance(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.fault_tolerance)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record([
            "sweep_value",
            "n",
            "m",
            "k",
            "n_k",
            "fault_tolerance",
            "lambda_max",
            "pd_lower",
            "exact_pd",
            "simulated_pd",
            "pipeline_pd",
        ])
        .map_err(io)?;
        let opt = |x: Option<f64>| x.map_or_else(|| "n/a".to_string(), |v| v.to_string());
        for r in &self.rows {
            w.write_record([
                r.sweep_value.to_string(),
                r.n.to_string(),
                r.m.to_string(),
                r.k.to_string(),
                r.n_k.to_string(),
                r.fault_tolerance.to_string(),
                r.bound.lambda_max.to_string(),
                opt(r.bound.pd_lower),
                opt(r.exact_pd),
                r.simulated_pd.to_string(),
                r.pipeline_pd.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Per-iteration bounds, exact values and simulated detection probabilities
/// for the basic scheme. The closed-form columns follow the path that keeps
/// region 0 each time; by the symmetry of the grid every path is equivalent.
pub fn run_analysis(cfg: &ExperimentConfig) -> Result<AnalysisTable> {
    let basic = ExperimentConfig {
        scheme: Scheme::Basic,
        ..cfg.clone()
    };
    basic.validate()?;
    let sim = run_experiment(&basic)?;
    let mut rows = Vec::new();
    for (index, (value, point)) in basic.sweep_points().into_iter().zip(&sim.points).enumerate() {
        let setup = basic.point(value)?;
        let n = setup.field.len();
        let mut roi = RegionOfInterest::Single(setup.field.roi());
        let mut active = setup.field.all_sensors();
        for k in 0..basic.k_stop {
            let stage = build_stage(roi, &active, &setup.field, &setup.scheme)?;
            let model = iteration_model(&setup.scheme, &setup.field, &stage);
            let bound = lambda_max(&model, default_resolution(&stage.partition))?;
            let exact = match exact_pd(&model) {
                Ok(p) => Some(p),
                Err(Error::EnumerationTooLarge { .. }) => None,
                Err(e) => return Err(e),
            };
            rows.push(AnalysisRow {
                sweep_value: value,
                n,
                m: basic.m,
                k,
                n_k: stage.code.n_k(),
                fault_tolerance: fault_tolerance_fraction(basic.m, n, k as u32),
                bound,
                exact_pd: exact,
                simulated_pd: true_path_pd(&setup, basic.seed, index, k, basic.trials)?,
                pipeline_pd: point.per_iteration_pd[k],
            });
            roi = RegionOfInterest::Single(stage.partition.region(0));
            active = stage.partition.members(0);
        }
    }
    Ok(AnalysisTable { rows })
}

fn iteration_model<'a>(
    scheme: &'a SchemeConfig,
    field: &'a crate::geometry::SensorField,
    stage: &'a crate::localization::Stage,
) -> IterationModel<'a> {
    IterationModel {
        field,
        partition: &stage.partition,
        code: &stage.code,
        thresholds: &stage.thresholds,
        propagation: &scheme.propagation,
        noise: &scheme.noise,
        alpha: scheme.attack.alpha,
    }
}
