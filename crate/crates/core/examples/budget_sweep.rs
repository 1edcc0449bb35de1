// Sweep the budget and compare how each algorithm tracks the bound.

use std::path::Path;

use inspection_planner::pipeline::{run_pipeline, sweep_csv, RunConfig, SweepSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let mut config = RunConfig::from_file(data.join("plate.json"))?;
    config.surface_samples = 100;
    config.orientations = 4;
    config.grid.resolution = 0.2;
    config.sweep = Some("budget=1,2,4".parse::<SweepSpec>()?);

    let output = run_pipeline(&config, &data, None)?;
    print!("{}", sweep_csv(&output.sweep));
    Ok(())
}

fn main() {
    run_example().expect("budget sweep example");
}
