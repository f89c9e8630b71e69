use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codeloc::error::{Error, Result};
use codeloc::harness::csv_io::{write_summary, SummaryRow};
use codeloc::harness::{emit_detail, emit_mle_csv, run_analysis, run_experiment_with_progress, ExperimentConfig};

#[derive(Parser)]
#[command(name = "codeloc", version, about = "Iterative coded target localization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the first sweep point only.
    Simulate(Opts),
    /// Run every sweep point.
    Sweep(Opts),
    /// Per-iteration bounds, exact and simulated detection probabilities.
    Analyze(Opts),
}

#[derive(Args)]
struct Opts {
    /// TOML experiment file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Also write one per-trial CSV per sweep point next to `--out`.
    #[arg(long)]
    detail: bool,
}

impl Opts {
    fn load(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                ExperimentConfig::from_toml_str(&text)?
            }
            None => ExperimentConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(w) = self.workers {
            cfg.workers = Some(w);
        }
        if self.detail {
            if self.out.is_none() {
                return Err(Error::Config {
                    field: "detail".into(),
                    reason: "per-trial output needs --out".into(),
                });
            }
            cfg.detail = true;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    out.with_file_name(format!("{stem}_{suffix}.csv"))
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(std::fs::File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn simulate(opts: &Opts, all_points: bool) -> Result<()> {
    let mut cfg = opts.load()?;
    if !all_points {
        cfg.sweep_values = cfg.sweep_points().into_iter().take(1).collect();
    }
    let total = cfg.sweep_points().len();
    let sink = output(&opts.out)?;
    let report = run_experiment_with_progress(&cfg, |i, p| {
        eprintln!(
            "[{}/{total}] {}={} pd={:.4} mse={:.4} ({:.0} ms)",
            i + 1,
            cfg.sweep.name(),
            p.sweep_value,
            p.pd,
            p.mse,
            p.wall_ms
        );
    })?;
    let rows: Vec<SummaryRow> = report.points.iter().map(SummaryRow::from).collect();
    write_summary(&rows, sink)?;
    if let Some(out) = &opts.out {
        if cfg.detail {
            for (i, p) in report.points.iter().enumerate() {
                emit_detail(p, &sibling(out, &format!("detail_{i}")))?;
            }
        }
        if cfg.baseline_mle {
            emit_mle_csv(&report, &sibling(out, "mle"))?;
        }
    }
    Ok(())
}

fn analyze(opts: &Opts) -> Result<()> {
    let cfg = opts.load()?;
    let sink = output(&opts.out)?;
    eprintln!("analyzing {} sweep point(s)", cfg.sweep_points().len());
    run_analysis(&cfg)?.write_csv(sink)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(o) => simulate(o, false),
        Command::Sweep(o) => simulate(o, true),
        Command::Analyze(o) => analyze(o),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) => 3,
                _ => 2,
            })
        }
    }
}
