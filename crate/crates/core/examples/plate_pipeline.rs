// The whole pipeline on the plate scenario, from mesh to reports.
//
// `cargo run --release --example plate_pipeline -- full` runs the full
// configuration from `examples/data/plate.json` and keeps its reports;
// without the argument a coarser variant runs in a scratch directory.

use std::path::Path;

use inspection_planner::pipeline::{run_and_emit, RunConfig};

fn run_with(full: bool) -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let mut config = RunConfig::from_file(data.join("plate.json"))?;
    if !full {
        config.surface_samples = 100;
        config.orientations = 4;
        config.grid.resolution = 0.2;
        config.budget = 4.0;
    }
    let scratch = tempfile::tempdir()?;
    if !full {
        config.output_dir = scratch.path().to_path_buf();
    }
    let (output, files) = run_and_emit(&config, &data)?;
    for row in &output.sweep {
        println!(
            "{:<7} f = {:.5}  C = {:.3} / {:.1}  f/OPT = {:.1}%  {} poses",
            row.algorithm.name(),
            row.quality,
            row.cost,
            row.budget,
            row.percent_of_opt,
            row.poses
        );
    }
    println!("{} files written", files.len());
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run_with(false)
}

fn main() {
    let full = std::env::args().nth(1).as_deref() == Some("full");
    run_with(full).expect("plate pipeline example");
}
