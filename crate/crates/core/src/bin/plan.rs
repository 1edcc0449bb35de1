use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use inspection_planner::pipeline::{run_and_emit, PipelineError, RunConfig, Stage, SweepSpec};
use inspection_planner::planner::Algorithm;
use inspection_planner::tsp::Estimator;

/// Environment variable capping the number of worker threads.
const THREADS_ENV: &str = "INSPECTION_PLANNER_THREADS";

/// Plan an inspection tour from a JSON run configuration.
#[derive(Debug, Parser)]
#[command(name = "plan", version)]
struct Args {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Comma-separated subset of greedy, greedy+, gcb, gcb+.
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<Algorithm>>,
    /// Parameter sweep, e.g. budget=2,5,10.
    #[arg(long)]
    sweep: Option<SweepSpec>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tour cost policy: nn, exact or auto.
    #[arg(long)]
    estimator: Option<Estimator>,
    /// Surface sampling seed.
    #[arg(long)]
    seed_surface: Option<u64>,
    /// Orientation sampling seed.
    #[arg(long)]
    seed_orient: Option<u64>,
}

fn configure_threads() -> Result<(), PipelineError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| PipelineError::new(Stage::Config, format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| PipelineError::new(Stage::Config, e.to_string()))
}

fn run(args: Args) -> Result<(), PipelineError> {
    configure_threads()?;
    let mut config = RunConfig::from_file(&args.config)?;
    let base_dir = args
        .config
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_default();
    if let Some(algorithms) = args.algorithms {
        config.algorithms = algorithms;
    }
    if let Some(sweep) = args.sweep {
        config.sweep = Some(sweep);
    }
    if let Some(out) = args.out {
        let cwd = std::env::current_dir()
            .map_err(|e| PipelineError::new(Stage::Config, e.to_string()))?;
        config.output_dir = cwd.join(out);
    }
    if let Some(estimator) = args.estimator {
        config.estimator = estimator;
    }
    if let Some(seed) = args.seed_surface {
        config.seeds.surface = seed;
    }
    if let Some(seed) = args.seed_orient {
        config.seeds.orientation = seed;
    }
    config.validate()?;

    let (output, files) = run_and_emit(&config, &base_dir)?;
    for row in &output.sweep {
        let value = row.value.map(|v| format!(" {}={v}", row.parameter.map_or("", |p| p.name()))).unwrap_or_default();
        println!(
            "{:<8}{value} f = {:.6} C = {:.4} / {:.4} f/OPT = {:.2}%",
            row.algorithm.name(),
            row.quality,
            row.cost,
            row.budget,
            row.percent_of_opt
        );
    }
    log::info!("wrote {} files", files.len());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
