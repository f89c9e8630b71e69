//! Experiment configuration, Monte-Carlo execution, statistics and CSV output.

pub mod config;
pub mod csv_io;
pub mod experiment;
pub mod stats;
pub mod table;

pub use config::{ExperimentConfig, OneOrMany, PointSetup, SweepAxis};
pub use csv_io::{emit_csv, emit_detail, emit_mle_csv, parse_csv, SummaryRow};
pub use experiment::{
    run_experiment, run_experiment_with_progress, true_path_pd, ExperimentReport, PointReport, TrialRecord,
};
pub use table::{run_analysis, AnalysisRow, AnalysisTable};
